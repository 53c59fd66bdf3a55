#include "doctest.h"
#include "sqlh/clock_ham.hpp"
#include "sqlh/fixtures.hpp"
#include "sqlh/verifier.hpp"

using namespace sqlh;

namespace {

BitString bs(const std::string& s) { return BitString::parse(s); }

// hand-computed 2-state toy: H = -(1/2) X, ground (1,1)/sqrt2, lambda0 = -1/2
SparseHam toy_ham() {
  auto m = std::make_shared<oracle::DenseHam>();
  m->n = 1;
  m->a.assign(4, ExactValue());
  m->at(0, 1) = ExactValue::rational(BigRat(-1, 2));
  m->at(1, 0) = ExactValue::rational(BigRat(-1, 2));
  return oracle::sparse_from_dense(m);
}

MerlinMessage toy_msg() {
  MerlinMessage msg;
  msg.lambda_star = ExactValue::rational(BigRat(-1, 2));
  msg.xi = vector_state(1, {ExactValue::integer(1), ExactValue::integer(1)});
  msg.x_star = bs("0");
  return msg;
}

}  // namespace

TEST_CASE("two-state toy chain reproduces the hand computation") {
  // F = H (stoquastic, nonnegative state); rate(0->1) = -(xi_1/xi_0)F(1,0) = 1/2
  SparseHam f = fixed_node(toy_ham(), toy_msg().xi);
  MarkovGenerator g = build_generator(f, toy_msg());
  CHECK(g.rate(bs("0"), bs("1")) == ExactValue::rational(BigRat(1, 2)));
  CHECK(g.rate(bs("1"), bs("0")) == ExactValue::rational(BigRat(1, 2)));
  CHECK(g.diag(bs("0")) == ExactValue::rational(BigRat(-1, 2)));
  CHECK(g.escape(bs("0")) == ExactValue::rational(BigRat(1, 2)));
  CHECK(legality_check(g, bs("0")).legal);
  CHECK(legality_check(g, bs("1")).legal);
}

TEST_CASE("exact instances are legal on the whole support") {
  Rng rng(0x71);
  for (int it = 0; it < 6; ++it) {
    int n = rng.range(2, 3);
    ExactInstance inst = exact_ground_instance(n, rng.substream(it), false);
    SparseHam f = fixed_node(oracle::sparse_from_dense(inst.ham), vector_state(n, inst.xi));
    MerlinMessage msg;
    msg.lambda_star = inst.lambda0;
    msg.xi = vector_state(n, inst.xi);
    msg.x_star = inst.x_star;
    MarkovGenerator g = build_generator(f, msg);
    for (uint64_t i = 0; i < (1ull << n); ++i) {
      BitString x = BitString::from_index(i, n);
      if (msg.xi.query(x).is_zero()) continue;
      Legality leg = legality_check(g, x);
      CHECK(leg.legal);
    }
  }
}

TEST_CASE("wrong lambda produces a balance residual everywhere") {
  Rng rng(0x72);
  ExactInstance inst = exact_ground_instance(2, rng, false);
  SparseHam f0 = fixed_node(oracle::sparse_from_dense(inst.ham), vector_state(2, inst.xi));
  MerlinMessage msg;
  msg.lambda_star = inst.lambda0 + ExactValue::rational(BigRat(1, 1000));
  msg.xi = vector_state(2, inst.xi);
  msg.x_star = inst.x_star;
  MarkovGenerator g = build_generator(f0, msg);
  Legality leg = legality_check(g, inst.x_star);
  CHECK_FALSE(leg.legal);
  CHECK(leg.reason.find("BalanceResidual") == 0);
}

TEST_CASE("negative injected rate reports Illegal(NegativeRate)") {
  MarkovGenerator g;
  g.n = 1;
  g.lambda_star = ExactValue();
  g.neighbors = [](const BitString&) { return std::vector<BitString>{bs("1")}; };
  g.rate = [](const BitString&, const BitString&) {
    return ExactValue::rational(BigRat(-1, 4));
  };
  g.diag = [](const BitString&) { return ExactValue::rational(BigRat(1, 4)); };
  g.escape = [](const BitString&) { return ExactValue::rational(BigRat(-1, 4)); };
  Legality leg = legality_check(g, bs("0"));
  CHECK_FALSE(leg.legal);
  CHECK(leg.reason.find("NegativeRate") == 0);
}

TEST_CASE("absorbing single state survives trivially") {
  MarkovGenerator g;
  g.n = 1;
  g.lambda_star = ExactValue();
  g.neighbors = [](const BitString&) { return std::vector<BitString>{}; };
  g.rate = [](const BitString&, const BitString&) { return ExactValue(); };
  g.diag = [](const BitString&) { return ExactValue(); };
  g.escape = [](const BitString&) { return ExactValue(); };
  RunOutcome run = gillespie_run(g, bs("0"), 10.0, Rng(5));
  CHECK(run.survived);
  CHECK(run.jumps == 0);
  CHECK(run.time == 10.0);
}

TEST_CASE("occupation converges to |xi|^2 on the toy chain") {
  SparseHam f = fixed_node(toy_ham(), toy_msg().xi);
  MarkovGenerator g = build_generator(f, toy_msg());
  RunOutcome run = gillespie_run(g, bs("0"), 2e5, Rng(0xABC), 1u << 30);
  double total = 0;
  for (auto& [x, t] : run.occupation) total += t;
  CHECK(run.survived);
  CHECK(std::abs(run.occupation[bs("0")] / total - 0.5) < 0.02);
}

TEST_CASE("verify accepts exact YES instances and rejects the NO family") {
  Rng rng(0x73);
  ExactInstance inst = exact_ground_instance(3, rng, false);
  SparseHam h = oracle::sparse_from_dense(inst.ham);
  VerifierConfig cfg;
  cfg.a = ExactValue::integer(-1);
  cfg.b = ExactValue::rational(BigRat(-3, 4));
  cfg.trials = 20;
  cfg.seed = 99;
  MerlinMessage msg;
  msg.lambda_star = inst.lambda0;
  msg.xi = vector_state(3, inst.xi);
  msg.x_star = inst.x_star;
  Verdict yes = verify(h, msg, cfg);
  CHECK(yes.accept);
  CHECK(yes.survived == cfg.trials);

  // fast path: lambda* > b
  MerlinMessage fast = msg;
  fast.lambda_star = ExactValue::rational(BigRat(-1, 2));
  Verdict v_fast = verify(h, fast, cfg);
  CHECK_FALSE(v_fast.accept);
  CHECK(v_fast.fast_path);

  // admissible but wrong lambda*: rejected at the first legality check
  MerlinMessage wrong = msg;
  wrong.lambda_star = inst.lambda0 + ExactValue::rational(BigRat(1, 64));
  Verdict v_wrong = verify(h, wrong, cfg);
  CHECK_FALSE(v_wrong.accept);
  CHECK(v_wrong.survived == 0);
}

TEST_CASE("verify handles complex instances through the doubling") {
  Rng rng(0x74);
  ExactInstance inst = exact_ground_instance(2, rng, /*complex=*/true);
  SparseHam h = oracle::sparse_from_dense(inst.ham);
  CHECK_FALSE(h.real);
  VerifierConfig cfg;
  cfg.a = ExactValue::integer(-1);
  cfg.b = ExactValue::rational(BigRat(-3, 4));
  cfg.trials = 12;
  cfg.seed = 7;
  MerlinMessage msg;
  msg.lambda_star = inst.lambda0;
  msg.xi = vector_state(2, inst.xi);
  msg.x_star = inst.x_star;
  Verdict v = verify(h, msg, cfg);
  CHECK(v.accept);
  CHECK(v.survived == cfg.trials);
}

TEST_CASE("clock-hamiltonian YES instance feeds the verifier end to end") {
  // K=1 Toffoli instance: H|eta> = 0 exactly, so eta is an exact ground state
  CircuitDescriptor c = CircuitDescriptor::parse("REG 3 0 0 0\nTOF 2 3 1\n");
  ClockHam ch = build_4local(c, bs("011"), BitString());
  SparseHam h = as_sparse(ch);
  MerlinMessage msg;
  msg.lambda_star = ExactValue();  // lambda0 = 0 exactly
  msg.xi = ch.history;
  msg.x_star = bs("0110");  // t=0 slice of the history state
  VerifierConfig cfg;
  cfg.a = ExactValue();
  cfg.b = ExactValue::rational(BigRat(1, 8));
  cfg.trials = 10;
  cfg.seed = 3;
  Verdict v = verify(h, msg, cfg);
  CHECK(v.accept);
  CHECK(v.survived == cfg.trials);
}

TEST_CASE("determinism: identical seeds give identical traces") {
  Rng rng(0x75);
  ExactInstance inst = exact_ground_instance(2, rng, false);
  SparseHam h = oracle::sparse_from_dense(inst.ham);
  VerifierConfig cfg;
  cfg.a = ExactValue::integer(-1);
  cfg.b = ExactValue::rational(BigRat(-3, 4));
  cfg.trials = 8;
  cfg.seed = 1234;
  MerlinMessage msg;
  msg.lambda_star = inst.lambda0;
  msg.xi = vector_state(2, inst.xi);
  msg.x_star = inst.x_star;
  Verdict a = verify(h, msg, cfg);
  Verdict b = verify(h, msg, cfg);
  REQUIRE(a.runs.size() == b.runs.size());
  for (size_t i = 0; i < a.runs.size(); ++i) {
    CHECK(a.runs[i].survived == b.runs[i].survived);
    CHECK(a.runs[i].time == b.runs[i].time);
    CHECK(a.runs[i].jumps == b.runs[i].jumps);
  }
}
