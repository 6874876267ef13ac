#pragma once

#include <vector>

#include "qcatn/dense_operator.hpp"

namespace qcatn {

/// Qubit Paulis.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// Heisenberg-Weyl shift X|s⟩ = |s+1 mod d⟩ and clock Z|s⟩ = ω^s |s⟩.
Matrix weyl_x(int d);
Matrix weyl_z(int d);

/// The d² operators X^a Z^b, (a,b) lexicographic starting at the identity.
/// Orthogonal under Hilbert-Schmidt, tr = 0 for all but the identity.
std::vector<Matrix> weyl_basis(int d);

/// Complete operator basis on a set of labels (local dimension d everywhere):
/// all tensor products of single-factor Weyl elements, identity first.
std::vector<DenseOperator> operator_basis(const std::vector<SiteLabel>& labels,
                                          int d);

}  // namespace qcatn
