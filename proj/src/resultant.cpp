#include <vector>

#include "projdyn/error.hpp"
#include "projdyn/hpoly.hpp"

namespace projdyn {

namespace {

// Coefficient of var^k, with the var exponent removed (still an HPoly in
// the remaining two variables).
HPoly var_coefficient(const HPoly& p, int var, int k) {
  std::vector<Monomial> out;
  for (const auto& t : p.terms()) {
    if (t.exps.at(var) != k) continue;
    Exps e = t.exps;
    e[var] = 0;
    out.push_back({t.coeff, e});
  }
  return HPoly::from_terms(std::move(out));
}

}  // namespace

HPoly hp_resultant(const HPoly& p, const HPoly& q, int var) {
  if (var < 0 || var > 2) throw Error(Errc::InvalidArgument, "bad variable index");
  if (p.is_zero() || q.is_zero()) return HPoly();
  const int m = p.max_exp(var);
  const int n = q.max_exp(var);
  if (m == 0 && n == 0) return HPoly::constant(GaussRat(1));
  if (m == 0) return hp_pow(p, n);
  if (n == 0) return hp_pow(q, m);

  // Sylvester matrix: n shifted rows of p-coefficients, m of q's,
  // highest var power first.
  const int N = m + n;
  std::vector<HPoly> pc(m + 1), qc(n + 1);
  for (int k = 0; k <= m; ++k) pc[k] = var_coefficient(p, var, k);
  for (int k = 0; k <= n; ++k) qc[k] = var_coefficient(q, var, k);
  std::vector<std::vector<HPoly>> S(N, std::vector<HPoly>(N));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) S[r][r + j] = pc[m - j];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) S[n + r][r + j] = qc[n - j];

  // Fraction-free Bareiss elimination; every division is exact.
  int sign = 1;
  HPoly prev = HPoly::constant(GaussRat(1));
  for (int k = 0; k + 1 < N; ++k) {
    if (S[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < N; ++i)
        if (!S[i][k].is_zero()) { piv = i; break; }
      if (piv < 0) return HPoly();
      std::swap(S[k], S[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        HPoly num = hp_sub(hp_mul(S[k][k], S[i][j]), hp_mul(S[i][k], S[k][j]));
        auto div = hp_divexact(num, prev);
        if (!div)
          throw Error(Errc::InvalidArgument, "Bareiss division not exact");
        S[i][j] = std::move(*div);
      }
      S[i][k] = HPoly();
    }
    prev = S[k][k];
  }
  HPoly det = S[N - 1][N - 1];
  return sign < 0 ? hp_neg(det) : det;
}

}  // namespace projdyn
