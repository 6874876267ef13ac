#pragma once

#include <cstdint>
#include <vector>

#include "qcatn/channel.hpp"
#include "qcatn/lattice.hpp"

namespace qcatn {

/// ρ ↦ ½[ρ + (σx)^N ρ (σx)^N]: causality preserving, not locality preserving.
Channel example1(const Lattice& lat);

/// CJS R = 1/2^N + S with S the weighted sum of (XX / ZZ) strings whose
/// amplitudes come from the half-lattice-shift Bell-pair state. Requires
/// qubits, even M, periodic boundary. Locality preserving; defeats any
/// M-independent PEPO bond dimension as M grows.
Channel example2(const Lattice& lat);

/// Data behind example2 exposed for validity audits.
struct Example2Data {
  Matrix S;          // the Pauli-string part, dim d^{2N}
  double k_N;        // prefactor 1/(2^N Σ|c_s|)
  double sum_abs_c;  // Σ_s |c_s|
};
Example2Data example2_data(const Lattice& lat);

/// Product over pairs (n, n + M/2 e1) of two-site dephasings
/// ρ ↦ ½[ρ + Z_n Z_m ρ Z_n Z_m]. Causality preserving but violates the
/// mutual-information area law.
Channel example3(const Lattice& lat);

/// The 16×16 reduced CJS of a single example3 pair (n, n', m, m'),
/// normalized to trace one, plus its member labels in pair order.
DenseOperator example3_pair_cjs_normalized(const Lattice& lat, int n, int m);

/// Pairs (n, n + M/2 along the first axis) with n in the 0-based lower half.
std::vector<std::pair<int, int>> example3_pairs(const Lattice& lat);

/// Cyclic shift by one along the first axis (periodic lattices).
Channel shift_qca(const Lattice& lat);
Matrix shift_unitary_matrix(const Lattice& lat);

/// Product of single-site unitaries u_n (all equal to `u`).
Channel product_unitary(const Lattice& lat, const Matrix& u);

/// Brickwork of two-site gates on a 1D lattice: layer 1 couples (0,1),(2,3),…
/// layer 2 couples (1,2),(3,4),… `layers` ∈ {1, 2}; `gate` is d²×d².
Channel brickwork_qca(const Lattice& lat, const Matrix& gate, int layers);
Matrix brickwork_unitary_matrix(const Lattice& lat, const Matrix& gate,
                                int layers);

/// Unitary swapping the two chain ends — spreads operators non-locally.
Channel long_range_swap(const Lattice& lat);

/// Embed a two-site gate (acting on sites i then j, gate index (i-major))
/// into the full lattice unitary.
Matrix embed_two_site_gate(const Lattice& lat, const Matrix& gate, int i, int j);

/// Random CPTP channel with `n_kraus` Kraus operators, seeded.
Channel random_channel(const Lattice& lat, int n_kraus, std::uint64_t seed);

/// Fat-lattice (local dimension d²) product unitary from a per-site gate on
/// (physical ⊗ ancilla); building block for dilated-channel fixtures.
Channel fat_product_unitary(const Lattice& phys_lat, const Matrix& pair_gate);

/// Commonly used pair gates on (physical ⊗ ancilla), d = 2.
Matrix swap_gate();        // dilation gives the reset-to-|1⟩ channel
Matrix cnot_phys_to_anc(); // dilation gives full dephasing

}  // namespace qcatn
