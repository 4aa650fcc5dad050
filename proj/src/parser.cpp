#include "projdyn/parser.hpp"

#include <cctype>
#include <map>

#include "projdyn/error.hpp"

namespace projdyn {

namespace {

// Possibly inhomogeneous sparse polynomial used only while parsing.
struct SparsePoly {
  std::map<Exps, GaussRat> terms;

  static SparsePoly constant(GaussRat c) {
    SparsePoly p;
    if (!c.is_zero()) p.terms[{0, 0, 0}] = std::move(c);
    return p;
  }
  static SparsePoly variable(int axis) {
    SparsePoly p;
    Exps e{0, 0, 0};
    e.at(axis) = 1;
    p.terms[e] = GaussRat(1);
    return p;
  }
};

SparsePoly sp_add(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly r = a;
  for (const auto& [e, c] : b.terms) {
    auto [it, fresh] = r.terms.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) r.terms.erase(it);
    }
  }
  return r;
}

SparsePoly sp_neg(const SparsePoly& a) {
  SparsePoly r;
  for (const auto& [e, c] : a.terms) r.terms[e] = -c;
  return r;
}

SparsePoly sp_mul(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly r;
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      Exps e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      auto [it, fresh] = r.terms.emplace(e, ca * cb);
      if (!fresh) {
        it->second += ca * cb;
        if (it->second.is_zero()) r.terms.erase(it);
      }
    }
  }
  return r;
}

SparsePoly sp_pow(const SparsePoly& a, long k) {
  SparsePoly r = SparsePoly::constant(GaussRat(1));
  SparsePoly base = a;
  while (k > 0) {
    if (k & 1) r = sp_mul(r, base);
    k >>= 1;
    if (k) base = sp_mul(base, base);
  }
  return r;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  SparsePoly parse_expression() {
    SparsePoly acc = parse_term();
    for (;;) {
      skip_ws();
      if (match('+')) acc = sp_add(acc, parse_term());
      else if (match('-')) acc = sp_add(acc, sp_neg(parse_term()));
      else return acc;
    }
  }

  void expect(char c) {
    skip_ws();
    if (!match(c))
      throw Error(Errc::ParseError,
                  std::string("expected '") + c + "'", pos_);
  }

  bool match(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }

  std::size_t pos() const { return pos_; }

 private:
  SparsePoly parse_term() {
    SparsePoly acc = parse_factor();
    for (;;) {
      skip_ws();
      if (match('*')) acc = sp_mul(acc, parse_factor());
      else return acc;
    }
  }

  SparsePoly parse_factor() {
    skip_ws();
    int sign = 1;
    while (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      if (s_[pos_] == '-') sign = -sign;
      ++pos_;
      skip_ws();
    }
    SparsePoly p = parse_primary();
    skip_ws();
    if (match('^')) {
      long k = parse_integer();
      if (k < 0) throw Error(Errc::ParseError, "negative exponent", pos_);
      p = sp_pow(p, k);
    }
    if (sign < 0) p = sp_neg(p);
    return p;
  }

  SparsePoly parse_primary() {
    skip_ws();
    if (pos_ >= s_.size())
      throw Error(Errc::ParseError, "unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      SparsePoly p = parse_expression();
      expect(')');
      return p;
    }
    if (c == 'x') { ++pos_; return SparsePoly::variable(0); }
    if (c == 'y') { ++pos_; return SparsePoly::variable(1); }
    if (c == 'z') { ++pos_; return SparsePoly::variable(2); }
    if (c == 'i') { ++pos_; return SparsePoly::constant(GaussRat::imag_unit()); }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = parse_integer();
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        long den = parse_integer();
        if (den == 0) throw Error(Errc::ParseError, "zero denominator", pos_);
        return SparsePoly::constant(GaussRat::ratio(num, den));
      }
      return SparsePoly::constant(GaussRat(num));
    }
    throw Error(Errc::ParseError,
                std::string("unexpected character '") + c + "'", pos_);
  }

  long parse_integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ == start)
      throw Error(Errc::ParseError, "expected an integer", pos_);
    try {
      return std::stol(s_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      throw Error(Errc::ParseError, "integer literal out of range", start);
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

HPoly to_homogeneous(const SparsePoly& p, std::size_t err_pos) {
  std::vector<Monomial> terms;
  int deg = -1;
  for (const auto& [e, c] : p.terms) {
    int d = exps_degree(e);
    if (deg < 0) deg = d;
    else if (d != deg)
      throw Error(Errc::InvalidLift,
                  "expression is not homogeneous (mixed degrees " +
                      std::to_string(deg) + " and " + std::to_string(d) + ")",
                  err_pos);
    terms.push_back({c, e});
  }
  return HPoly::from_terms(std::move(terms));
}

}  // namespace

HPoly parse_hpoly(const std::string& text) {
  Parser p(text);
  SparsePoly sp = p.parse_expression();
  if (!p.at_end())
    throw Error(Errc::ParseError, "trailing input", p.pos());
  return to_homogeneous(sp, p.pos());
}

RationalMap parse_map(const std::string& text) {
  Parser p(text);
  p.expect('[');
  std::array<HPoly, 3> lift;
  for (int i = 0; i < 3; ++i) {
    std::size_t here = p.pos();
    SparsePoly sp = p.parse_expression();
    lift[i] = to_homogeneous(sp, here);
    if (i < 2) p.expect(':');
  }
  p.expect(']');
  if (!p.at_end())
    throw Error(Errc::ParseError, "trailing input after map", p.pos());
  int d = -1;
  for (const auto& c : lift) {
    if (c.is_zero()) continue;
    if (d < 0) d = c.degree();
    else if (c.degree() != d)
      throw Error(Errc::InvalidLift, "components of unequal degree");
  }
  return RationalMap::from_lift(std::move(lift));
}

}  // namespace projdyn
