#include "sqlh/hamfile.hpp"

#include <fstream>
#include <sstream>

namespace sqlh {

namespace {

const char* label_tag(TermLabel l) { return term_label_name(l); }

TermLabel parse_label(const std::string& s) {
  if (s == "in") return TermLabel::In;
  if (s == "out") return TermLabel::Out;
  if (s == "clock") return TermLabel::Clock;
  if (s == "prop") return TermLabel::Prop;
  fail(Errc::SyntaxError, "unknown term label '" + s + "'");
}

std::string cls_token(const ClassDescriptor& c) {
  std::string fam = c.family == Family::N      ? "N"
                    : c.family == Family::Qplus ? "Q+"
                    : c.family == Family::Q     ? "Q"
                                                : "C";
  std::string flags;
  for (const Flag& f : c.flags) {
    if (!flags.empty()) flags += ",";
    if (f.kind == FlagKind::Sqrt) flags += "sqrt";
    else if (f.kind == FlagKind::Omega) flags += "omega";
    else flags += "half:" + std::to_string(f.width);
  }
  return fam + ":" + std::to_string(c.p) + ":" + (flags.empty() ? "-" : flags);
}

ClassDescriptor parse_cls_token(const std::string& tok) {
  auto c1 = tok.find(':');
  auto c2 = tok.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    fail(Errc::SyntaxError, "bad class token '" + tok + "'");
  std::string fam = tok.substr(0, c1);
  unsigned p = static_cast<unsigned>(std::stoul(tok.substr(c1 + 1, c2 - c1 - 1)));
  std::string flags = tok.substr(c2 + 1);
  if (flags == "-") flags.clear();
  return ClassDescriptor::parse(fam, p, flags);
}

}  // namespace

ClassDescriptor fit_class(const std::vector<ExactValue>& values) {
  std::vector<ClassDescriptor> ladder;
  for (unsigned p : {1u, 2u, 4u, 8u, 16u, 32u, 52u}) {
    ladder.push_back(ClassDescriptor::plain(Family::Q, p));
  }
  for (unsigned p : {1u, 2u, 4u, 8u, 16u, 32u, 52u}) {
    ladder.push_back(ClassDescriptor::plain(Family::C, p));
    ladder.push_back(ClassDescriptor::plain(Family::C, p).with_flag(FlagKind::Omega, 3));
    ladder.push_back(ClassDescriptor::plain(Family::C, p).with_flag(FlagKind::Half, 4));
    ladder.push_back(ClassDescriptor::plain(Family::C, p)
                         .with_flag(FlagKind::Omega, 3)
                         .with_flag(FlagKind::Half, 4));
    ladder.push_back(ClassDescriptor::plain(Family::C, p).with_flag(FlagKind::Sqrt, 1));
  }
  for (const ClassDescriptor& cls : ladder) {
    bool ok = true;
    for (const ExactValue& v : values) {
      try {
        encode(v, cls);
      } catch (const Error&) {
        ok = false;
        break;
      }
    }
    if (ok) return cls;
  }
  fail(Errc::FlagMismatch, "no class in the ladder encodes all entries");
}

SparseHam HamFile::to_sparse() const {
  if (entries) return oracle::sparse_from_dense(entries);
  auto shared = std::make_shared<const std::vector<LocalTerm>>(terms);
  return sparse_from_terms(shared, qubits);
}

HamFile HamFile::from_clock(const ClockHam& h, const std::string& variant) {
  HamFile f;
  f.variant = variant;
  f.qubits = h.total_qubits();
  f.locality = h.locality;
  f.terms = h.terms;
  f.real = true;
  for (const LocalTerm& t : f.terms)
    if (!t.is_real()) { f.real = false; break; }
  return f;
}

HamFile HamFile::from_dense(std::shared_ptr<oracle::DenseHam> m, const std::string& variant) {
  HamFile f;
  f.variant = variant;
  f.qubits = m->n;
  f.locality = m->n;
  f.entries = std::move(m);
  f.real = true;
  for (const ExactValue& v : f.entries->a)
    if (!v.is_real()) { f.real = false; break; }
  return f;
}

std::string HamFile::str() const {
  std::ostringstream os;
  os << "HAMFILE 1\n";
  os << "variant " << variant << "\n";
  os << "qubits " << qubits << "\n";
  os << "locality " << locality << "\n";
  os << "real " << (real ? 1 : 0) << "\n";
  if (!entries) {
    os << "repr terms " << terms.size() << "\n";
    for (const LocalTerm& t : terms) {
      std::vector<ExactValue> vals(t.mat.begin(), t.mat.end());
      ClassDescriptor cls = fit_class(vals);
      os << "term " << label_tag(t.label) << " " << t.prop_t << " " << t.support.size();
      for (int q : t.support) os << " " << q;
      os << " " << cls_token(cls) << "\n";
      size_t dim = t.dim();
      for (size_t r = 0; r < dim; ++r) {
        for (size_t c = 0; c < dim; ++c) {
          if (c) os << " ";
          os << encode(t.at(r, c), cls).str();
        }
        os << "\n";
      }
    }
  } else {
    size_t dim = entries->dim();
    std::vector<ExactValue> vals(entries->a.begin(), entries->a.end());
    ClassDescriptor cls = fit_class(vals);
    os << "repr entries " << cls_token(cls) << "\n";
    for (size_t r = 0; r < dim; ++r) {
      for (size_t c = 0; c < dim; ++c) {
        if (c) os << " ";
        os << encode(entries->at(r, c), cls).str();
      }
      os << "\n";
    }
  }
  return os.str();
}

HamFile HamFile::parse(const std::string& text) {
  std::istringstream is(text);
  HamFile f;
  std::string tok;
  int version = 0;
  if (!(is >> tok >> version) || tok != "HAMFILE" || version != 1)
    fail(Errc::SyntaxError, "not a HAMFILE v1 document");
  int real_flag = 1;
  size_t n_terms = 0;
  std::string repr;
  while (is >> tok) {
    if (tok == "variant") is >> f.variant;
    else if (tok == "qubits") is >> f.qubits;
    else if (tok == "locality") is >> f.locality;
    else if (tok == "real") is >> real_flag;
    else if (tok == "repr") {
      is >> repr;
      break;
    } else {
      fail(Errc::SyntaxError, "unknown header field '" + tok + "'");
    }
  }
  f.real = real_flag != 0;
  if (f.qubits <= 0) fail(Errc::SyntaxError, "missing qubit count");
  if (repr == "terms") {
    if (!(is >> n_terms)) fail(Errc::SyntaxError, "missing term count");
    for (size_t ti = 0; ti < n_terms; ++ti) {
      std::string kw, label, clstok;
      int prop_t = 0;
      size_t k = 0;
      if (!(is >> kw >> label >> prop_t >> k) || kw != "term")
        fail(Errc::SyntaxError, "bad term header in record " + std::to_string(ti));
      LocalTerm t;
      t.label = parse_label(label);
      t.prop_t = prop_t;
      for (size_t i = 0; i < k; ++i) {
        int q;
        if (!(is >> q)) fail(Errc::SyntaxError, "bad support list");
        if (q < 0 || q >= f.qubits) fail(Errc::IndexOutOfRange, "term support outside register");
        t.support.push_back(q);
      }
      if (!(is >> clstok)) fail(Errc::SyntaxError, "missing class token");
      ClassDescriptor cls = parse_cls_token(clstok);
      size_t dim = size_t(1) << k;
      t.mat.resize(dim * dim);
      for (size_t i = 0; i < dim * dim; ++i) {
        std::string bits;
        if (!(is >> bits)) fail(Errc::SyntaxError, "missing matrix entry");
        t.mat[i] = decode(BitString::parse(bits), cls);
      }
      f.terms.push_back(std::move(t));
    }
  } else if (repr == "entries") {
    std::string clstok;
    if (!(is >> clstok)) fail(Errc::SyntaxError, "missing class token");
    ClassDescriptor cls = parse_cls_token(clstok);
    auto dense = std::make_shared<oracle::DenseHam>();
    dense->n = f.qubits;
    size_t dim = dense->dim();
    dense->a.resize(dim * dim);
    for (size_t i = 0; i < dim * dim; ++i) {
      std::string bits;
      if (!(is >> bits)) fail(Errc::SyntaxError, "missing matrix entry");
      dense->a[i] = decode(BitString::parse(bits), cls);
    }
    f.entries = std::move(dense);
  } else {
    fail(Errc::SyntaxError, "unknown representation '" + repr + "'");
  }
  return f;
}

void HamFile::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(Errc::Io, "cannot write '" + path + "'");
  out << str();
}

HamFile HamFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace sqlh
