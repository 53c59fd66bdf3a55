#include "sqlh/xform.hpp"

#include <algorithm>

namespace sqlh {

SparseHam complexify_to_real(const SparseHam& h) {
  SparseHam out;
  out.n = h.n + 1;
  out.real = true;
  if (h.locality) out.locality = *h.locality + 1;
  auto entry = h.entry;
  auto rows = h.rows;
  int n = h.n;
  out.entry = [entry, n](const BitString& xp, const BitString& yp) {
    if ((int)xp.size() != n + 1 || (int)yp.size() != n + 1)
      fail(Errc::BadWidth, "entry query width");
    BitString x = xp.slice(0, n), y = yp.slice(0, n);
    uint8_t u = xp.bit(n), v = yp.bit(n);
    ExactValue z = entry(x, y);
    if (u == v) return z.real_part();
    ExactValue b = z.imag_part();
    return (u == 0 && v == 1) ? -b : b;  // -b above, +b below the diagonal pair
  };
  out.rows = [entry, rows, n](const BitString& xp) {
    BitString x = xp.slice(0, n);
    uint8_t u = xp.bit(n);
    std::vector<BitString> cols;
    for (const BitString& y : rows(x)) {
      ExactValue z = entry(x, y);
      bool re = !z.real_part().is_zero();
      bool im = !z.imag_part().is_zero();
      // u = 0 row: (y||0) via Re, (y||1) via -Im ; u = 1 row mirrored
      if (re) {
        BitString c = y;
        c.push_back(u);
        cols.push_back(std::move(c));
      }
      if (im) {
        BitString c = y;
        c.push_back(1 - u);
        cols.push_back(std::move(c));
      }
    }
    std::sort(cols.begin(), cols.end());
    return cols;
  };
  return out;
}

namespace {

// sign of a(x) * H(x,y) * a(y); entries and amplitudes are real here
int pair_sign(const ExactValue& ax, const ExactValue& hxy, const ExactValue& ay) {
  return ax.sign_real() * hxy.sign_real() * ay.sign_real();
}

}  // namespace

SparseHam fixed_node(const SparseHam& h, const AmplitudeQuery& xi) {
  if (!h.real) fail(Errc::ComplexEntries, "fixed-node needs a real Hamiltonian");
  if (xi.n != h.n) fail(Errc::BadWidth, "state/Hamiltonian qubit count mismatch");
  SparseHam out;
  out.n = h.n;
  out.real = true;
  auto entry = h.entry;
  auto rows = h.rows;
  auto q = xi.query;
  auto alpha = [q](const BitString& x) {
    ExactValue v = q(x);
    if (!v.is_real())
      fail(Errc::ComplexEntries, "fixed-node state has a complex amplitude at " + x.str());
    return v;
  };
  out.entry = [entry, rows, alpha](const BitString& x, const BitString& y) -> ExactValue {
    if (x == y) {
      ExactValue ax = alpha(x);
      if (ax.is_zero())
        fail(Errc::ZeroAmplitudeVisited, "diagonal query at " + x.str() + " outside supp(xi)");
      ExactValue diag = entry(x, x);
      for (const BitString& z : rows(x)) {
        if (z == x) continue;
        ExactValue az = alpha(z);
        if (az.is_zero()) continue;  // zero product pairs sit in N
        ExactValue hxz = entry(x, z);
        if (pair_sign(ax, hxz, az) > 0) diag = diag + (az / ax) * hxz;
      }
      return diag;
    }
    ExactValue hxy = entry(x, y);
    if (hxy.is_zero()) return hxy;
    int s = pair_sign(alpha(x), hxy, alpha(y));
    return s > 0 ? ExactValue() : hxy;  // P entries vanish, N entries survive
  };
  auto fentry = out.entry;
  out.rows = [rows, fentry, alpha, entry](const BitString& x) {
    std::vector<BitString> cols;
    bool saw_diag = false;
    ExactValue ax = alpha(x);
    for (const BitString& y : rows(x)) {
      if (y == x) { saw_diag = true; continue; }
      // keep N-columns and zero-classified columns, drop P-columns
      ExactValue ay = alpha(y);
      ExactValue hxy = entry(x, y);
      if (!ax.is_zero() && !ay.is_zero() && pair_sign(ax, hxy, ay) > 0) continue;
      cols.push_back(y);
    }
    (void)saw_diag;
    if (!ax.is_zero() && !fentry(x, x).is_zero()) cols.push_back(x);
    std::sort(cols.begin(), cols.end());
    return cols;
  };
  return out;
}

SparseHam sign_gauge(const SparseHam& f, const AmplitudeQuery& xi) {
  if (xi.n != f.n) fail(Errc::BadWidth, "state/Hamiltonian qubit count mismatch");
  SparseHam out = f;
  auto entry = f.entry;
  auto q = xi.query;
  auto sgn = [q](const BitString& x) {
    ExactValue v = q(x);
    if (!v.is_real()) fail(Errc::ComplexEntries, "sign gauge needs real amplitudes");
    int s = v.sign_real();
    if (s == 0) fail(Errc::ZeroAmplitudeVisited, "sign gauge at " + x.str() + " outside supp(xi)");
    return s;
  };
  out.entry = [entry, sgn](const BitString& x, const BitString& y) {
    ExactValue v = entry(x, y);
    if (v.is_zero()) return v;
    int s = sgn(x) * sgn(y);
    return s < 0 ? -v : v;
  };
  return out;
}

}  // namespace sqlh
