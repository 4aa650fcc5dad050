#include "projdyn/gaussrat.hpp"

#include "projdyn/error.hpp"

namespace projdyn {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidLift: return "InvalidLift";
    case Errc::NotAS: return "NotAS";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::IoError: return "IoError";
    case Errc::NotAPoint: return "NotAPoint";
    case Errc::DegreeTooSmall: return "DegreeTooSmall";
    case Errc::PatchNearIndeterminacy: return "PatchNearIndeterminacy";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

GaussRat GaussRat::ratio(long num, long den) {
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return GaussRat(q);
}

GaussRat GaussRat::inverse() const {
  if (is_zero()) throw Error(Errc::InvalidArgument, "division by zero GaussRat");
  mpq_class n = norm2();
  return GaussRat(re_ / n, -im_ / n);
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o) { return *this *= o.inverse(); }

std::string GaussRat::str() const {
  if (im_ == 0) return re_.get_str();
  if (re_ == 0) {
    if (im_ == 1) return "i";
    if (im_ == -1) return "-i";
    return im_.get_str() + "*i";
  }
  std::string s = "(" + re_.get_str();
  if (im_ > 0) {
    s += "+";
    s += (im_ == 1) ? "i" : im_.get_str() + "*i";
  } else {
    mpq_class a = -im_;
    s += "-";
    s += (a == 1) ? "i" : a.get_str() + "*i";
  }
  return s + ")";
}

}  // namespace projdyn
