#include "sqlh/fixtures.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "sqlh/hamfile.hpp"
#include "sqlh/statespec.hpp"

namespace sqlh {

using nlohmann::json;

AmplitudeQuery vector_state(int n, std::vector<ExactValue> entries) {
  if ((size_t(1) << n) != entries.size()) fail(Errc::BadWidth, "vector state needs 2^n entries");
  auto data = std::make_shared<std::vector<ExactValue>>(std::move(entries));
  AmplitudeQuery q;
  q.n = n;
  q.query = [data, n](const BitString& x) {
    if ((int)x.size() != n) fail(Errc::BadWidth, "query string width");
    return data->at(x.index());
  };
  q.scale.bound_bits = 2 * n + 4;
  q.codomain = ClassDescriptor::plain(Family::C, 8);
  return q;
}

ExactInstance exact_ground_instance(int n, Rng rng, bool complex_entries, bool nowhere_zero) {
  size_t dim = size_t(1) << n;
  ExactInstance inst;
  inst.lambda0 = ExactValue::integer(-1);
  // unnormalised ground vector with small nonzero integer entries
  auto rand_entry = [&](bool allow_zero) {
    int v = rng.range(-4, 4);
    while (!allow_zero && v == 0) v = rng.range(-4, 4);
    return v;
  };
  std::vector<ExactValue> xi(dim);
  for (size_t i = 0; i < dim; ++i) {
    int re = rand_entry(!nowhere_zero);
    if (complex_entries) {
      int im = rand_entry(true);
      if (!nowhere_zero || re != 0 || im != 0)
        xi[i] = ExactValue::complex_rational(re, im);
      else
        xi[i] = ExactValue::integer(1);
    } else {
      xi[i] = ExactValue::integer(re);
    }
  }
  // <xi|xi>
  ExactValue nrm;
  for (const ExactValue& v : xi) nrm = nrm + v.conj() * v;
  // projector part P = |xi><xi| / <xi|xi>
  auto ham = std::make_shared<oracle::DenseHam>();
  ham->n = n;
  ham->a.assign(dim * dim, ExactValue());
  std::vector<std::vector<ExactValue>> proj(dim, std::vector<ExactValue>(dim));
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) proj[i][j] = xi[i] * xi[j].conj() / nrm;
  // random PSD perturbation C^dagger C, projected off the ground vector
  std::vector<std::vector<ExactValue>> c(dim, std::vector<ExactValue>(dim));
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      int re = rng.range(-2, 2);
      int im = complex_entries ? rng.range(-2, 2) : 0;
      c[i][j] = ExactValue::complex_rational(re, im);
    }
  ExactValue scale = ExactValue::rational(BigRat(1, 8 * (int)dim));
  auto perp = [&](size_t i, size_t j) {  // (I - P)_{ij}
    ExactValue d = (i == j) ? ExactValue::integer(1) : ExactValue();
    return d - proj[i][j];
  };
  // A = (I-P) C^dag C (I-P) * scale, assembled exactly
  std::vector<std::vector<ExactValue>> cc(dim, std::vector<ExactValue>(dim));
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      ExactValue s;
      for (size_t k = 0; k < dim; ++k) s = s + c[k][i].conj() * c[k][j];
      cc[i][j] = s * scale;
    }
  std::vector<std::vector<ExactValue>> tmp(dim, std::vector<ExactValue>(dim));
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      ExactValue s;
      for (size_t k = 0; k < dim; ++k) s = s + perp(i, k) * cc[k][j];
      tmp[i][j] = s;
    }
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      ExactValue s;
      for (size_t k = 0; k < dim; ++k) s = s + tmp[i][k] * perp(k, j);
      ham->at(i, j) = s - proj[i][j];
    }
  inst.ham = std::move(ham);
  inst.xi = std::move(xi);
  // start at the largest-magnitude amplitude
  size_t best = 0;
  QSqrt2 best_mag;
  for (size_t i = 0; i < dim; ++i) {
    QSqrt2 m = inst.xi[i].abs_squared_qs2();
    if ((m - best_mag).sign() > 0) { best_mag = m; best = i; }
  }
  inst.x_star = BitString::from_index(best, n);
  return inst;
}

std::shared_ptr<oracle::DenseHam> random_complex_hermitian(int n, Rng rng, unsigned p) {
  size_t dim = size_t(1) << n;
  auto ham = std::make_shared<oracle::DenseHam>();
  ham->n = n;
  ham->a.assign(dim * dim, ExactValue());
  int cap = (1 << std::min(p, 6u)) - 1;
  auto rnd = [&]() { return BigRat(rng.range(-cap, cap), rng.range(1, cap)); };
  for (size_t i = 0; i < dim; ++i) {
    ham->at(i, i) = ExactValue::rational(rnd());
    for (size_t j = i + 1; j < dim; ++j) {
      ExactValue v = ExactValue::complex_rational(rnd(), rnd());
      ham->at(i, j) = v;
      ham->at(j, i) = v.conj();
    }
  }
  return ham;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(Errc::Io, "cannot write '" + path + "'");
  out << content;
}

json meta_common(const std::string& kind, int n, uint64_t seed) {
  json m;
  m["kind"] = kind;
  m["n"] = n;
  m["seed"] = seed;
  return m;
}

}  // namespace

FixtureSet make_fixture(const std::string& kind_in, const std::string& dir, int n,
                        uint64_t seed) {
  std::string kind = kind_in == "no" ? "no-lambda" : kind_in;  // default NO flavour
  oracle::Config cap;
  if (n > cap.cap) fail(Errc::CapExceeded, "fixture size above the oracle cap");
  std::filesystem::create_directories(dir);
  FixtureSet fs;
  fs.ham_path = dir + "/ham.txt";
  fs.state_path = dir + "/state.json";
  fs.meta_path = dir + "/meta.json";
  Rng rng(Rng::mix(seed));
  json meta = meta_common(kind, n, seed);

  auto dump_instance = [&](const ExactInstance& inst, const std::string& lambda,
                           const std::string& a, const std::string& b,
                           const std::vector<ExactValue>& state,
                           const std::string& expect) {
    HamFile hf = HamFile::from_dense(inst.ham, "entries");
    hf.save(fs.ham_path);
    write_file(fs.state_path, vector_spec_json(n, state));
    meta["lambda"] = lambda;
    meta["xstar"] = inst.x_star.str();
    meta["a"] = a;
    meta["b"] = b;
    meta["expect"] = expect;
    write_file(fs.meta_path, meta.dump(2) + "\n");
  };

  if (kind == "yes" || kind == "yes-complex" || kind == "stationarity") {
    ExactInstance inst = exact_ground_instance(n, rng, kind == "yes-complex");
    if (kind == "stationarity") {
      meta["jumps"] = 100000;
      meta["tv_tolerance"] = "0.05";
    }
    dump_instance(inst, "-1", "-1", "-3/4", inst.xi, "accept");
  } else if (kind == "no-fastpath") {
    ExactInstance inst = exact_ground_instance(n, rng, false);
    // the claimed energy exceeds b: rejected before any simulation
    dump_instance(inst, "0", "-1", "-3/4", inst.xi, "reject");
  } else if (kind == "no-lambda") {
    ExactInstance inst = exact_ground_instance(n, rng, false);
    // lambda* admissible but wrong: every column balance picks up the offset
    dump_instance(inst, "-63/64", "-1", "-3/4", inst.xi, "reject");
  } else if (kind == "no-xi") {
    // correct lambda*, perturbed state; the perturbation is chosen in the
    // null space of row x*, so x* itself stays legal and the walk must travel
    // to find the illegal sector.
    for (int attempt = 0;; ++attempt) {
      ExactInstance inst = exact_ground_instance(n, rng.substream(attempt), false);
      size_t dim = size_t(1) << n;
      size_t xs = inst.x_star.index();
      size_t y1 = (xs + 1) % dim, y2 = (xs + 2) % dim;
      ExactValue h1 = inst.ham->at(xs, y1), h2 = inst.ham->at(xs, y2);
      if (h1.is_zero() || h2.is_zero()) continue;
      ExactValue t = ExactValue::rational(BigRat(1, 3));
      std::vector<ExactValue> xi2 = inst.xi;
      xi2[y1] = xi2[y1] + h2 * t;
      xi2[y2] = xi2[y2] - h1 * t;
      if (xi2[y1].is_zero() || xi2[y2].is_zero()) continue;
      // require most of the support to carry a broken balance, so a walk
      // leaving x* rejects almost immediately
      size_t broken = 0, candidates = 0;
      for (size_t x = 0; x < dim; ++x) {
        if (x == xs || xi2[x].is_zero()) continue;
        ++candidates;
        ExactValue hx;
        for (size_t y = 0; y < dim; ++y) hx = hx + inst.ham->at(x, y) * xi2[y];
        if (!(hx == inst.lambda0 * xi2[x])) ++broken;
      }
      if (candidates == 0 || 2 * broken < candidates) continue;
      dump_instance(inst, "-1", "-1", "-3/4", xi2, "reject");
      break;
    }
  } else if (kind == "spectrum") {
    auto ham = random_complex_hermitian(n, rng);
    HamFile hf = HamFile::from_dense(ham, "entries");
    hf.save(fs.ham_path);
    meta["expect"] = "spectrum-doubling";
    write_file(fs.meta_path, meta.dump(2) + "\n");
    fs.state_path.clear();
  } else {
    fail(Errc::BadManifest, "unknown fixture kind '" + kind + "'");
  }
  return fs;
}

}  // namespace sqlh
