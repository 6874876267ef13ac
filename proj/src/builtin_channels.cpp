#include "qcatn/builtin_channels.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qcatn/linalg.hpp"
#include "qcatn/pauli.hpp"
#include "qcatn/random.hpp"

namespace qcatn {

namespace {

long ipow(long base, int exp) {
  long out = 1;
  for (int k = 0; k < exp; ++k) out *= base;
  return out;
}

void require_qubits(const Lattice& lat, const char* who) {
  if (lat.local_dim() != 2)
    throw std::invalid_argument(std::string(who) + ": requires qubits (d = 2)");
}

void require_even_M(const Lattice& lat, const char* who) {
  if (lat.linear_size() % 2 != 0)
    throw std::invalid_argument(std::string(who) + ": requires even M");
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Channel example1(const Lattice& lat) {
  require_qubits(lat, "example1");
  const long dim = ipow(2, lat.num_sites());
  Matrix flip = Matrix::Identity(1, 1);
  for (int n = 0; n < lat.num_sites(); ++n) flip = kron(flip, pauli_x());
  const double c = 1.0 / std::sqrt(2.0);
  Channel ch = Channel::from_kraus_matrices(
      lat, {c * Matrix::Identity(dim, dim), c * flip});
  ch.set_id("example1");
  return ch;
}

std::vector<std::pair<int, int>> example3_pairs(const Lattice& lat) {
  require_even_M(lat, "paired channel");
  const int M = lat.linear_size();
  std::vector<std::pair<int, int>> pairs;
  for (int n = 0; n < lat.num_sites(); ++n) {
    Coord c = lat.site_coord(n);
    if (c[0] < M / 2) {
      Coord m = c;
      m[0] += M / 2;
      pairs.emplace_back(n, lat.site_index(m));
    }
  }
  return pairs;
}

Example2Data example2_data(const Lattice& lat) {
  require_qubits(lat, "example2");
  require_even_M(lat, "example2");
  if (lat.boundary() != Boundary::periodic)
    throw std::invalid_argument("example2: requires periodic boundaries");

  const int N = lat.num_sites();
  const auto pairs = example3_pairs(lat);  // same half-lattice-shift pairing
  const int P = static_cast<int>(pairs.size());
  const long dim2 = ipow(2, 2 * N);

  Example2Data out;
  out.sum_abs_c = std::pow(2.0, P / 2.0);          // 2^P strings, each 2^{-P/2}
  out.k_N = 1.0 / (std::pow(2.0, N) * out.sum_abs_c);
  const double c_s = std::pow(2.0, -P / 2.0);
  const double w = out.k_N * c_s;

  // Qubit order: physical 0..N-1 then ancillas 0..N-1; factor 0 is the most
  // significant index bit.
  auto bit_of = [&](int factor) { return 2 * N - 1 - factor; };

  out.S = Matrix::Zero(dim2, dim2);
  for (long cfg = 0; cfg < (1L << P); ++cfg) {
    std::uint64_t xmask = 0, zmask = 0;
    std::vector<char> s(N, 0);
    for (int p = 0; p < P; ++p)
      if ((cfg >> p) & 1) s[pairs[p].first] = s[pairs[p].second] = 1;
    for (int n = 0; n < N; ++n) {
      const std::uint64_t both =
          (1ull << bit_of(n)) | (1ull << bit_of(N + n));
      if (s[n])
        xmask |= both;  // (X_n X_n')
      else
        zmask |= both;  // (Z_n Z_n')
    }
    for (long row = 0; row < dim2; ++row) {
      const long col = static_cast<long>(row ^ static_cast<long>(xmask));
      const int sign = std::popcount(static_cast<std::uint64_t>(row) & zmask) & 1;
      out.S(row, col) += sign ? -w : w;
    }
  }
  return out;
}

Channel example2(const Lattice& lat) {
  Example2Data data = example2_data(lat);
  const long dim2 = data.S.rows();
  const double p = 1.0 / std::pow(2.0, lat.num_sites());
  Matrix R = std::move(data.S);
  R += p * Matrix::Identity(dim2, dim2);
  Channel ch = Channel::from_cjs(lat, std::move(R));
  ch.set_id("example2");
  return ch;
}

Channel example3(const Lattice& lat) {
  require_qubits(lat, "example3");
  const auto pairs = example3_pairs(lat);
  const int P = static_cast<int>(pairs.size());
  const long dim = ipow(2, lat.num_sites());
  const double c = std::pow(2.0, -P / 2.0);

  SiteSet all(lat.num_sites());
  for (int n = 0; n < lat.num_sites(); ++n) all[n] = n;
  const auto full = physical_labels(all);

  std::vector<Matrix> kraus;
  kraus.reserve(1L << P);
  for (long cfg = 0; cfg < (1L << P); ++cfg) {
    DenseOperator k = DenseOperator::identity(full, 2);
    for (int p = 0; p < P; ++p) {
      if (!((cfg >> p) & 1)) continue;
      auto zz = tensor_product(
          DenseOperator::on({{pairs[p].first, SiteKind::physical}}, 2, pauli_z()),
          DenseOperator::on({{pairs[p].second, SiteKind::physical}}, 2, pauli_z()));
      k = DenseOperator::on(full, 2,
                            embed(zz, full, 2).matrix() * k.matrix());
    }
    kraus.push_back(c * k.matrix());
  }
  (void)dim;
  Channel ch = Channel::from_kraus_matrices(lat, kraus);
  ch.set_id("example3");
  return ch;
}

DenseOperator example3_pair_cjs_normalized(const Lattice& lat, int n, int m) {
  require_qubits(lat, "example3");
  Vector bell(4);
  bell << 1, 0, 0, 1;
  bell /= std::sqrt(2.0);
  Vector bell_z(4);  // (σz ⊗ 1)|I⟩
  bell_z << 1, 0, 0, -1;
  bell_z /= std::sqrt(2.0);

  auto pair_state = [&](int site, const Vector& v) {
    Matrix proj = v * v.adjoint();
    return DenseOperator::on(
        {{site, SiteKind::physical}, {site, SiteKind::ancilla}}, 2, proj);
  };
  DenseOperator ii = tensor_product(pair_state(n, bell), pair_state(m, bell));
  DenseOperator zz = tensor_product(pair_state(n, bell_z), pair_state(m, bell_z));
  return 0.5 * (ii + zz);
}

Matrix shift_unitary_matrix(const Lattice& lat) {
  if (lat.boundary() != Boundary::periodic)
    throw std::invalid_argument("shift: requires periodic boundaries");
  const int N = lat.num_sites();
  const int d = lat.local_dim();
  const long dim = ipow(d, N);
  const int M = lat.linear_size();

  // Site permutation: output site n takes the value of its -e1 neighbor.
  std::vector<int> source(N);
  for (int n = 0; n < N; ++n) {
    Coord c = lat.site_coord(n);
    c[0] = (c[0] - 1 + M) % M;
    source[n] = lat.site_index(c);
  }

  Matrix U = Matrix::Zero(dim, dim);
  std::vector<int> digits(N);
  for (long q = 0; q < dim; ++q) {
    long qq = q;
    for (int k = N - 1; k >= 0; --k) {
      digits[k] = static_cast<int>(qq % d);
      qq /= d;
    }
    long p = 0;
    for (int k = 0; k < N; ++k) p = p * d + digits[source[k]];
    U(p, q) = 1.0;
  }
  return U;
}

Channel shift_qca(const Lattice& lat) {
  Channel ch = Channel::from_unitary(lat, shift_unitary_matrix(lat));
  ch.set_id("shift");
  return ch;
}

Channel product_unitary(const Lattice& lat, const Matrix& u) {
  if (u.rows() != lat.local_dim() || u.cols() != lat.local_dim())
    throw std::invalid_argument("product_unitary: gate has wrong dimension");
  Matrix U = Matrix::Identity(1, 1);
  for (int n = 0; n < lat.num_sites(); ++n) U = kron(U, u);
  Channel ch = Channel::from_unitary(lat, std::move(U));
  ch.set_id("product-unitary");
  return ch;
}

Matrix embed_two_site_gate(const Lattice& lat, const Matrix& gate, int i, int j) {
  const int d = lat.local_dim();
  if (gate.rows() != d * d || gate.cols() != d * d)
    throw std::invalid_argument("two-site gate has wrong dimension");
  if (i == j) throw std::invalid_argument("two-site gate needs distinct sites");
  SiteSet all(lat.num_sites());
  for (int n = 0; n < lat.num_sites(); ++n) all[n] = n;
  DenseOperator g({{i, SiteKind::physical}, {j, SiteKind::physical}},
                  {d, d}, gate);
  return embed(g, physical_labels(all), d).matrix();
}

Matrix brickwork_unitary_matrix(const Lattice& lat, const Matrix& gate,
                                int layers) {
  if (lat.spatial_dim() != 1)
    throw std::invalid_argument("brickwork: 1D lattices only");
  if (layers < 1 || layers > 2)
    throw std::invalid_argument("brickwork: layers must be 1 or 2");
  const int M = lat.linear_size();
  const long dim = ipow(lat.local_dim(), M);
  Matrix U = Matrix::Identity(dim, dim);
  for (int k = 0; k + 1 < M; k += 2)
    U = embed_two_site_gate(lat, gate, k, k + 1) * U;
  if (layers == 2) {
    for (int k = 1; k + 1 < M; k += 2)
      U = embed_two_site_gate(lat, gate, k, k + 1) * U;
    if (lat.boundary() == Boundary::periodic && M % 2 == 0 && M > 2)
      U = embed_two_site_gate(lat, gate, M - 1, 0) * U;
  }
  return U;
}

Channel brickwork_qca(const Lattice& lat, const Matrix& gate, int layers) {
  Channel ch = Channel::from_unitary(lat, brickwork_unitary_matrix(lat, gate, layers));
  ch.set_id(layers == 1 ? "brickwork-1" : "brickwork-2");
  return ch;
}

Channel long_range_swap(const Lattice& lat) {
  const int d = lat.local_dim();
  Matrix swap = Matrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) swap(a * d + b, b * d + a) = 1.0;
  Channel ch = Channel::from_unitary(
      lat, embed_two_site_gate(lat, swap, 0, lat.num_sites() - 1));
  ch.set_id("long-range-swap");
  return ch;
}

Channel random_channel(const Lattice& lat, int n_kraus, std::uint64_t seed) {
  if (n_kraus < 1) throw std::invalid_argument("random_channel: need >= 1 Kraus");
  const long dim = ipow(lat.local_dim(), lat.num_sites());
  Rng rng = keyed_rng(seed, 0x6b72617573ull);
  std::vector<Matrix> g;
  Matrix t = Matrix::Zero(dim, dim);
  for (int k = 0; k < n_kraus; ++k) {
    g.push_back(ginibre(dim, dim, rng));
    t += g.back().adjoint() * g.back();
  }
  // K_i = G_i T^{-1/2} makes the family trace preserving.
  EighResult et = eigh(t);
  Matrix tinv_sqrt = Matrix::Zero(dim, dim);
  for (long k = 0; k < dim; ++k)
    tinv_sqrt += (1.0 / std::sqrt(et.eigenvalues[k])) * et.eigenvectors.col(k) *
                 et.eigenvectors.col(k).adjoint();
  std::vector<Matrix> kraus;
  for (const auto& gk : g) kraus.push_back(gk * tinv_sqrt);
  Channel ch = Channel::from_kraus_matrices(lat, kraus);
  ch.set_id("random");
  return ch;
}

Channel fat_product_unitary(const Lattice& phys_lat, const Matrix& pair_gate) {
  const int d = phys_lat.local_dim();
  if (pair_gate.rows() != d * d || pair_gate.cols() != d * d)
    throw std::invalid_argument("fat_product_unitary: gate must act on d^2");
  Lattice fat(phys_lat.spatial_dim(), phys_lat.linear_size(), d * d,
              phys_lat.boundary(), phys_lat.range());
  return product_unitary(fat, pair_gate);
}

Matrix swap_gate() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = s(3, 3) = 1;
  s(1, 2) = s(2, 1) = 1;
  return s;
}

Matrix cnot_phys_to_anc() {
  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = c(1, 1) = 1;  // |0a⟩ fixed
  c(3, 2) = c(2, 3) = 1;  // |1a⟩ → |1, a⊕1⟩
  return c;
}

}  // namespace qcatn
