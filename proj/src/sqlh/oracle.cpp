#include "sqlh/oracle.hpp"

#include <Eigen/Dense>

namespace sqlh {
namespace oracle {

namespace {

void check_cap(int n, const Config& cfg, const char* what) {
  if (n > cfg.cap)
    fail(Errc::CapExceeded, std::string(what) + " needs " + std::to_string(n) +
                                " qubits, cap is " + std::to_string(cfg.cap));
}

}  // namespace

DenseState basis_state(int n, const BitString& x, const Config& cfg) {
  check_cap(n, cfg, "dense state");
  if ((int)x.size() != n) fail(Errc::BadWidth, "basis string width mismatch");
  DenseState s;
  s.n = n;
  s.amp.assign(size_t(1) << n, ExactValue());
  s.amp[x.index()] = ExactValue::integer(1);
  return s;
}

DenseState pattern_state(const SubsetPattern& pat, const Config& cfg) {
  int n = pat.n();
  check_cap(n, cfg, "pattern state");
  DenseState s;
  s.n = n;
  size_t dim = size_t(1) << n;
  s.amp.assign(dim, ExactValue());
  size_t free_count = 0;
  for (uint8_t f : pat.free_) free_count += f;
  ExactValue amp = ExactValue::inv_sqrt2_pow(static_cast<unsigned>(free_count));
  for (size_t i = 0; i < dim; ++i) {
    BitString b = BitString::from_index(i, n);
    if (pat.member(b)) s.amp[i] = amp;
  }
  return s;
}

DenseState initial_state(const CircuitDescriptor& c, const BitString& x, const BitString& xi,
                         const Config& cfg) {
  return pattern_state(initial_pattern(c, x, xi), cfg);
}

void apply_gate(const Gate& g, DenseState& s) {
  const size_t dim = s.amp.size();
  const int n = s.n;
  auto bitpos = [n](int q) { return size_t(1) << (n - q); };  // 1-based qubit -> mask
  switch (g.kind) {
    case GateKind::ID:
      return;
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::TOF:
    case GateKind::SWAP: {
      std::vector<ExactValue> out(dim);
      for (size_t i = 0; i < dim; ++i) {
        if (s.amp[i].is_zero()) continue;
        BitString b = BitString::from_index(i, n);
        apply_classical_gate(g, b);
        out[b.index()] = std::move(s.amp[i]);
      }
      s.amp = std::move(out);
      return;
    }
    case GateKind::H: {
      size_t mask = bitpos(g.qubits[0]);
      ExactValue inv = ExactValue::inv_sqrt2_pow(1);
      for (size_t i = 0; i < dim; ++i) {
        if (i & mask) continue;
        ExactValue lo = s.amp[i], hi = s.amp[i | mask];
        s.amp[i] = (lo + hi) * inv;
        s.amp[i | mask] = (lo - hi) * inv;
      }
      return;
    }
    case GateKind::T:
    case GateKind::TDG: {
      size_t mask = bitpos(g.qubits[0]);
      ExactValue w = ExactValue::omega(g.kind == GateKind::T ? 1 : 7);
      for (size_t i = 0; i < dim; ++i)
        if ((i & mask) && !s.amp[i].is_zero()) s.amp[i] = s.amp[i] * w;
      return;
    }
  }
}

DenseState simulate(const CircuitDescriptor& c, DenseState init, size_t upto, const Config& cfg) {
  check_cap(init.n, cfg, "simulation");
  if (init.n != c.qubit_count()) fail(Errc::BadWidth, "state/circuit qubit count mismatch");
  size_t k = std::min(upto, c.gate_count());
  for (size_t i = 0; i < k; ++i) apply_gate(c.gates[i], init);
  return init;
}

ExactValue accept_probability(const CircuitDescriptor& c, const BitString& x,
                              const BitString& xi, const Config& cfg) {
  DenseState fin = simulate(c, initial_state(c, x, xi, cfg), SIZE_MAX, cfg);
  size_t mask = size_t(1) << (fin.n - c.output_qubit());
  ExactValue p;
  for (size_t i = 0; i < fin.amp.size(); ++i) {
    if (!(i & mask) || fin.amp[i].is_zero()) continue;
    p = p + ExactValue::from_qsqrt2(fin.amp[i].abs_squared_qs2());
  }
  return p;
}

Densified densify_state(const AmplitudeQuery& a, const Config& cfg) {
  check_cap(a.n, cfg, "densify_state");
  Densified d;
  d.values.n = a.n;
  size_t dim = size_t(1) << a.n;
  d.values.amp.reserve(dim);
  QSqrt2 sum;
  for (size_t i = 0; i < dim; ++i) {
    ExactValue v = a.query(BitString::from_index(i, a.n));
    sum = sum + v.abs_squared_qs2();
    d.values.amp.push_back(std::move(v));
  }
  d.scale_squared = sum;
  if (sum.is_rational() && !sum.is_zero()) d.scale = ExactValue::sqrt_rational(sum.a());
  return d;
}

ExactValue scale_consistency(const AmplitudeQuery& a, const DenseState& ref, const Config& cfg) {
  if (a.n != ref.n) fail(Errc::BadWidth, "query/reference qubit count mismatch");
  check_cap(a.n, cfg, "scale consistency");
  size_t dim = size_t(1) << a.n;
  // reference pivot: first nonzero amplitude
  size_t pivot = dim;
  for (size_t i = 0; i < dim; ++i)
    if (!ref.amp[i].is_zero()) { pivot = i; break; }
  if (pivot == dim) fail(Errc::InconsistentScale, "reference state is the zero vector");
  ExactValue qp = a.query(BitString::from_index(pivot, a.n));
  if (qp.is_zero()) fail(Errc::InconsistentScale, "query vanishes on the reference support");
  ExactValue c = qp / ref.amp[pivot];
  if (!c.is_real() || c.sign_real() <= 0)
    fail(Errc::InconsistentScale, "scale " + c.str() + " is not a positive real");
  for (size_t i = 0; i < dim; ++i) {
    ExactValue qi = a.query(BitString::from_index(i, a.n));
    if (!(qi == c * ref.amp[i]))
      fail(Errc::InconsistentScale,
           "no single scale: mismatch at " + BitString::from_index(i, a.n).str());
  }
  return c;
}

DenseHam densify_ham(const SparseHam& h, const Config& cfg, int full_check_cap) {
  check_cap(h.n, cfg, "densify_ham");
  DenseHam d;
  d.n = h.n;
  size_t dim = size_t(1) << h.n;
  d.a.assign(dim * dim, ExactValue());
  for (size_t i = 0; i < dim; ++i) {
    BitString x = BitString::from_index(i, h.n);
    for (const BitString& y : h.rows(x)) {
      ExactValue v = h.entry(x, y);
      if (v.is_zero())
        fail(Errc::RowSupportMismatch, "row " + x.str() + " lists zero column " + y.str());
      d.at(i, y.index()) = std::move(v);
    }
  }
  // Hermiticity is structural for our builders; verify exactly.
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = i; j < dim; ++j)
      if (!(d.at(i, j) == d.at(j, i).conj()))
        fail(Errc::Internal, "densified operator is not Hermitian");
  if (h.n <= full_check_cap) {
    for (size_t i = 0; i < dim; ++i) {
      BitString x = BitString::from_index(i, h.n);
      for (size_t j = 0; j < dim; ++j) {
        BitString y = BitString::from_index(j, h.n);
        ExactValue v = h.entry(x, y);
        if (!(v == d.at(i, j)))
          fail(Errc::RowSupportMismatch,
               "entry(" + x.str() + "," + y.str() + ") is nonzero but unlisted");
      }
    }
  }
  return d;
}

std::vector<double> spectrum(const DenseHam& h) {
  size_t dim = h.dim();
  Eigen::MatrixXcd m(dim, dim);
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) m(i, j) = h.at(i, j).to_complex();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) fail(Errc::ConvergenceFailure, "eigensolver did not converge");
  std::vector<double> evs(dim);
  double norm = 0;
  for (size_t i = 0; i < dim; ++i) {
    evs[i] = es.eigenvalues()(i);
    norm = std::max(norm, std::abs(evs[i]));
  }
  if (norm == 0) return evs;
  for (size_t i = 0; i < dim; ++i) {
    double res = (m * es.eigenvectors().col(i) - evs[i] * es.eigenvectors().col(i)).norm();
    if (res > 1e-9 * norm)
      fail(Errc::ConvergenceFailure, "residual " + std::to_string(res) + " above 1e-9*|H|");
  }
  return evs;
}

double lowest_eigenvalue(const DenseHam& h) { return spectrum(h).front(); }

bool stoquastic_check(const DenseHam& h) {
  size_t dim = h.dim();
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      if (!h.at(i, j).is_real())
        fail(Errc::ComplexEntries, "stoquastic check on a complex operator");
      if (i != j && h.at(i, j).sign_real() > 0) return false;
    }
  return true;
}

QSqrt2 norm_squared(const DenseState& s) {
  QSqrt2 sum;
  for (const ExactValue& v : s.amp) sum = sum + v.abs_squared_qs2();
  return sum;
}

ExactValue inner_product(const DenseState& a, const DenseState& b) {
  if (a.n != b.n) fail(Errc::BadWidth, "inner product dimension mismatch");
  ExactValue sum;
  for (size_t i = 0; i < a.amp.size(); ++i) {
    if (a.amp[i].is_zero() || b.amp[i].is_zero()) continue;
    sum = sum + a.amp[i].conj() * b.amp[i];
  }
  return sum;
}

SparseHam sparse_from_dense(std::shared_ptr<const DenseHam> m) {
  SparseHam h;
  h.n = m->n;
  h.real = true;
  for (const ExactValue& v : m->a)
    if (!v.is_real()) { h.real = false; break; }
  int n = m->n;
  h.entry = [m, n](const BitString& x, const BitString& y) {
    if ((int)x.size() != n || (int)y.size() != n) fail(Errc::BadWidth, "entry query width");
    return m->at(x.index(), y.index());
  };
  h.rows = [m, n](const BitString& x) {
    std::vector<BitString> out;
    size_t i = x.index();
    for (size_t j = 0; j < m->dim(); ++j)
      if (!m->at(i, j).is_zero()) out.push_back(BitString::from_index(j, n));
    return out;
  };
  return h;
}

}  // namespace oracle
}  // namespace sqlh
