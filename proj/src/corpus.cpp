#include "projdyn/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "projdyn/error.hpp"
#include "projdyn/parser.hpp"

namespace projdyn {

namespace {

Vec3c pt(double a, double b, double c) {
  return {cplx(a, 0), cplx(b, 0), cplx(c, 0)};
}

std::vector<CorpusEntry> make_corpus() {
  std::vector<CorpusEntry> v;

  CorpusEntry cremona;
  cremona.name = "cremona";
  cremona.expression = "[y*z : z*x : x*y]";
  cremona.degree = 2;
  cremona.stable = false;
  cremona.as_depth = 6;
  cremona.as_witness = 2;
  cremona.indeterminacy = {pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)};
  cremona.oracle = "none";
  cremona.note = "birational involution; even iterates reduce to the identity";
  v.push_back(cremona);

  CorpusEntry squaring;
  squaring.name = "squaring";
  squaring.expression = "[x^2 : y^2 : z^2]";
  squaring.degree = 2;
  squaring.stable = true;
  squaring.as_depth = 5;
  squaring.oracle = "monomial-max";
  squaring.note = "holomorphic; escape potential has the closed form "
                  "log max|w_i| on unit vectors";
  v.push_back(squaring);

  CorpusEntry henon;
  henon.name = "henon";
  henon.expression = "[y*z : y^2 + z^2 - x*z : z^2]";
  henon.degree = 2;
  henon.stable = true;
  henon.as_depth = 5;
  henon.indeterminacy = {pt(1, 0, 0)};
  henon.oracle = "none";
  henon.note = "plane polynomial automorphism extended to the projective "
               "plane; superattracting point at [0:1:0]";
  v.push_back(henon);

  CorpusEntry identity;
  identity.name = "identity";
  identity.expression = "[x : y : z]";
  identity.degree = 1;
  identity.stable = true;
  identity.as_depth = 5;
  identity.oracle = "none";
  identity.note = "degree-1 edge case; escape operations refuse it";
  v.push_back(identity);

  CorpusEntry collapse;
  collapse.name = "collapse";
  collapse.expression = "[x^2 : x*y : x*z]";
  collapse.degree = 1;
  collapse.stable = true;
  collapse.as_depth = 5;
  collapse.oracle = "none";
  collapse.note = "common factor x cancels; reduces to the identity with a "
                  "reduction notice";
  v.push_back(collapse);

  CorpusEntry nondominant;
  nondominant.name = "nondominant";
  nondominant.expression = "[x^2 : x*y : y^2]";
  nondominant.degree = 2;
  nondominant.stable = false;  // the square reduces back to the map itself
  nondominant.as_depth = 3;
  nondominant.as_witness = 2;
  nondominant.indeterminacy = {pt(0, 0, 1)};
  nondominant.oracle = "none";
  nondominant.note = "image is a conic; Jacobian vanishes identically and "
                     "the dominance flag is off";
  v.push_back(nondominant);

  return v;
}

std::string cplx_str(const cplx& c) {
  char buf[64];
  if (c.imag() == 0.0) std::snprintf(buf, sizeof buf, "%.12g", c.real());
  else std::snprintf(buf, sizeof buf, "%.12g%+.12gi", c.real(), c.imag());
  return buf;
}

cplx parse_cplx(const std::string& s) {
  // "re" or "re+imi" / "re-imi"
  if (!s.empty() && s.back() == 'i') {
    size_t split = s.find_last_of("+-");
    if (split == std::string::npos || split == 0)
      return cplx(0.0, std::stod(s.substr(0, s.size() - 1)));
    return cplx(std::stod(s.substr(0, split)),
                std::stod(s.substr(split, s.size() - split - 1)));
  }
  return cplx(std::stod(s), 0.0);
}

}  // namespace

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> corpus = make_corpus();
  return corpus;
}

const CorpusEntry* corpus_find(const std::string& name) {
  for (const auto& e : builtin_corpus())
    if (e.name == name) return &e;
  return nullptr;
}

RationalMap corpus_map(const std::string& name) {
  const CorpusEntry* e = corpus_find(name);
  if (!e) throw Error(Errc::InvalidArgument, "unknown corpus entry: " + name);
  return parse_map(e->expression);
}

std::string corpus_serialize(const CorpusEntry& e) {
  std::ostringstream out;
  out << "entry " << e.name << "\n";
  out << "expr " << e.expression << "\n";
  out << "degree " << e.degree << "\n";
  if (e.stable) out << "as stable " << e.as_depth << "\n";
  else out << "as unstable " << e.as_witness << "\n";
  if (!e.indeterminacy.empty()) {
    out << "ind";
    for (const auto& p : e.indeterminacy)
      out << " " << cplx_str(p[0]) << "," << cplx_str(p[1]) << ","
          << cplx_str(p[2]);
    out << "\n";
  }
  out << "oracle " << (e.oracle.empty() ? "none" : e.oracle) << "\n";
  if (!e.note.empty()) out << "note " << e.note << "\n";
  out << "end\n";
  return out.str();
}

std::vector<CorpusEntry> corpus_parse(const std::string& text) {
  std::vector<CorpusEntry> out;
  std::istringstream in(text);
  std::string line;
  CorpusEntry cur;
  bool open = false;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(Errc::ParseError, "corpus line " + std::to_string(lineno) +
                                      ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "entry") {
      if (open) fail("nested entry");
      open = true;
      cur = CorpusEntry{};
      ls >> cur.name;
      if (cur.name.empty()) fail("entry without a name");
    } else if (!open) {
      fail("directive outside an entry");
    } else if (key == "expr") {
      std::getline(ls, cur.expression);
      size_t b = cur.expression.find_first_not_of(' ');
      cur.expression = b == std::string::npos ? "" : cur.expression.substr(b);
    } else if (key == "degree") {
      ls >> cur.degree;
    } else if (key == "as") {
      std::string kind;
      int n = 0;
      ls >> kind >> n;
      if (kind == "stable") { cur.stable = true; cur.as_depth = n; }
      else if (kind == "unstable") { cur.stable = false; cur.as_witness = n; }
      else fail("bad stability line");
    } else if (key == "ind") {
      std::string triple;
      while (ls >> triple) {
        size_t c1 = triple.find(','), c2 = triple.rfind(',');
        if (c1 == std::string::npos || c2 == c1) fail("bad point triple");
        cur.indeterminacy.push_back(
            {parse_cplx(triple.substr(0, c1)),
             parse_cplx(triple.substr(c1 + 1, c2 - c1 - 1)),
             parse_cplx(triple.substr(c2 + 1))});
      }
    } else if (key == "oracle") {
      ls >> cur.oracle;
    } else if (key == "note") {
      std::getline(ls, cur.note);
      size_t b = cur.note.find_first_not_of(' ');
      cur.note = b == std::string::npos ? "" : cur.note.substr(b);
    } else if (key == "end") {
      out.push_back(cur);
      open = false;
    } else {
      fail("unknown directive: " + key);
    }
  }
  if (open) fail("unterminated entry");
  return out;
}

}  // namespace projdyn
