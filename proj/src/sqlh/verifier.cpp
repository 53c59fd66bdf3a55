#include "sqlh/verifier.hpp"

#include <cmath>

#include "sqlh/amplitude_query.hpp"

namespace sqlh {

MarkovGenerator build_generator(const SparseHam& f, const MerlinMessage& msg) {
  if (!f.real) fail(Errc::ComplexEntries, "the generator needs a real (fixed-node) Hamiltonian");
  if (msg.xi.n != f.n) fail(Errc::BadWidth, "state/Hamiltonian qubit count mismatch");
  MarkovGenerator g;
  g.n = f.n;
  g.lambda_star = msg.lambda_star;
  auto q = msg.xi.query;
  auto entry = f.entry;
  auto rows = f.rows;
  auto alpha = [q](const BitString& x) {
    ExactValue v = q(x);
    if (!v.is_real()) fail(Errc::ComplexEntries, "complex amplitude on a real walk");
    return v;
  };
  g.neighbors = [rows, q](const BitString& x) {
    std::vector<BitString> out;
    for (BitString& y : rows(x)) {
      if (y == x) continue;
      if (q(y).is_zero()) continue;  // rate vanishes with xi_y
      out.push_back(std::move(y));
    }
    return out;
  };
  // rate(x -> y) = <y|G|x> = -(xi_y / xi_x) F(y,x)
  g.rate = [entry, alpha](const BitString& x, const BitString& y) {
    ExactValue ax = alpha(x);
    if (ax.is_zero())
      fail(Errc::ZeroAmplitudeVisited, "walk visited " + x.str() + " outside supp(xi)");
    ExactValue ay = alpha(y);
    if (ay.is_zero()) return ExactValue();
    return -(ay / ax) * entry(y, x);
  };
  ExactValue lam = msg.lambda_star;
  g.diag = [entry, alpha, lam](const BitString& x) {
    ExactValue ax = alpha(x);
    if (ax.is_zero())
      fail(Errc::ZeroAmplitudeVisited, "walk visited " + x.str() + " outside supp(xi)");
    return lam - entry(x, x);  // <x|G|x>
  };
  auto nbrs = g.neighbors;
  auto rate = g.rate;
  g.escape = [nbrs, rate](const BitString& x) {
    ExactValue sum;
    for (const BitString& y : nbrs(x)) sum = sum + rate(x, y);
    return sum;
  };
  return g;
}

Legality legality_check(const MarkovGenerator& g, const BitString& x) {
  Legality out;
  ExactValue sum_rates;
  for (const BitString& y : g.neighbors(x)) {
    ExactValue r = g.rate(x, y);
    if (!r.is_real() || r.sign_real() < 0) {
      out.legal = false;
      out.reason = "NegativeRate at " + x.str() + " -> " + y.str() + " (" + r.str() + ")";
      return out;
    }
    sum_rates = sum_rates + r;
  }
  ExactValue balance = g.diag(x) + sum_rates;  // sum_y <y|G|x>
  if (!balance.is_zero()) {
    out.legal = false;
    out.reason = "BalanceResidual at " + x.str() + " (" + balance.str() + ")";
  }
  return out;
}

RunOutcome gillespie_run(const MarkovGenerator& g, const BitString& start, double t_max,
                         Rng rng, uint64_t max_jumps) {
  RunOutcome out;
  BitString x = start;
  double t = 0;
  while (true) {
    Legality leg = legality_check(g, x);
    if (!leg.legal) {
      out.reason = leg.reason;
      out.time = t;
      return out;
    }
    std::vector<BitString> nbrs = g.neighbors(x);
    std::vector<double> rates;
    double esc = 0;
    for (const BitString& y : nbrs) {
      double r = g.rate(x, y).to_double();
      rates.push_back(r);
      esc += r;
    }
    if (esc <= 0) {  // absorbing state: survives to t_max trivially
      out.occupation[x] += t_max - t;
      out.survived = true;
      out.time = t_max;
      return out;
    }
    double dt = -std::log(rng.uniform01()) / esc;
    if (t + dt >= t_max) {
      out.occupation[x] += t_max - t;
      out.survived = true;
      out.time = t_max;
      return out;
    }
    out.occupation[x] += dt;
    t += dt;
    double u = rng.uniform01() * esc;
    size_t pick = 0;
    double acc = 0;
    for (; pick + 1 < rates.size(); ++pick) {
      acc += rates[pick];
      if (u <= acc) break;
    }
    x = nbrs[pick];
    if (++out.jumps >= max_jumps) {
      out.reason = "JumpBudgetExhausted";
      out.time = t;
      return out;
    }
  }
}

Verdict verify(const SparseHam& h, const MerlinMessage& msg, const VerifierConfig& cfg) {
  Verdict v;
  v.trials = cfg.trials;
  if ((cfg.b - cfg.a).sign_real() <= 0) fail(Errc::OutOfRange, "thresholds need a < b");
  // fast path: an admissible claim satisfies lambda* <= b
  if ((msg.lambda_star - cfg.b).sign_real() > 0) {
    v.accept = false;
    v.fast_path = true;
    v.reason = "lambda* > b";
    return v;
  }
  // transform to the real, then stoquastic side
  SparseHam f = h;
  MerlinMessage m = msg;
  if (!h.real) {
    SparseHam real_h = complexify_to_real(h);
    auto [phi1, phi2] = split_real(msg.xi);
    m.xi = phi1;
    // pick the doubled start configuration inside supp(phi1)
    BitString x0 = msg.x_star;
    x0.push_back(0);
    if (m.xi.query(x0).is_zero()) {
      x0.set(x0.size() - 1, 1);
      if (m.xi.query(x0).is_zero())
        fail(Errc::ZeroAmplitudeVisited, "x* has zero amplitude in the split state");
    }
    m.x_star = x0;
    f = real_h;
  }
  if (m.xi.query(m.x_star).is_zero()) {
    v.accept = false;
    v.reason = "x* outside supp(xi)";
    return v;
  }
  SparseHam fn = fixed_node(f, m.xi);
  MarkovGenerator g = build_generator(fn, m);
  double t_max = cfg.t_max == 0 ? std::pow(static_cast<double>(f.n), 3.0)
                                : static_cast<double>(cfg.t_max);
  Rng base(cfg.seed);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    RunOutcome run =
        gillespie_run(g, m.x_star, t_max, base.substream(static_cast<uint64_t>(trial)),
                      cfg.max_jumps);
    if (run.survived) ++v.survived;
    v.runs.push_back(std::move(run));
  }
  v.accept = 2 * v.survived >= cfg.trials;  // survival fraction >= 1/2
  v.reason = v.accept ? "survival fraction >= 1/2" : "survival fraction < 1/2";
  return v;
}

}  // namespace sqlh
