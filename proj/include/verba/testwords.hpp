#pragma once

#include <array>
#include <map>
#include <optional>

#include "verba/slp.hpp"

namespace verba {

/// Normalized commutator-axis data for a pair of noncommuting hyperbolic
/// elements: [Y1^10, Y2^{10k}] = B^l exactly, Y_i = X_i^s.
struct CommutatorAxisData {
  Word B;              // simple
  std::int64_t l = 0;  // exponent
  Word s;              // conjugator, of the form f^-1 B^j
  Word Y1, Y2;
  Word f;              // conjugator of the raw commutator's decomposition
  std::int64_t k = 0;  // the constant the data was built for
};

/// Builds (B, l, s, Y1, Y2) for [X1^10, X2^{10k}]; s is searched over
/// f^-1 B^j, |j| <= 2l+4, until the size and non-power conditions hold.
CommutatorAxisData commutator_axis_data(const Word& X1, const Word& X2, std::int64_t k,
                                        std::uint64_t budget = kDefaultBudget);

/// Smallest k in the search schedule for which, simultaneously,
/// l(X1,X2,k) in {1,2}, |B(X1,X2,k)| > N and 4|B| > |s|. The schedule is
/// exhaustive for k <= 64 and geometric above; callers re-verify the
/// conditions at every use of the returned constant.
std::int64_t kappa(std::int64_t N, const Word& X1, const Word& X2,
                   std::uint64_t budget = kDefaultBudget);

/// The word [z0^10,z1^10]^5000 z0 c^200 z1 c^400 z0^-1 c^600 z1^-1 c^5000
/// with the commutator subterm shared.
WordExpr l2_expr(const WordExpr& e0, const WordExpr& e1);
/// Direct evaluation of the same word at concrete arguments.
Word l2_value(const Word& a, const Word& b, std::uint64_t budget);

/// Cyclically reduced conjugate W = T1 R1 T2 R2 T3 R3 T4 R4 of L2(X1,X2^k)
/// together with the verified size bounds.
struct WStructure {
  CommutatorAxisData axis;
  std::array<Word, 4> T;
  std::array<Word, 4> R;
  Word W;
  Word conjugator;  // s B^{4990 l}; conjugate(L2(X1,X2^k), conjugator) == W
};
WStructure w_structure(const Word& X1, const Word& X2, std::int64_t k,
                       std::uint64_t budget = kDefaultBudget);

/// Nested square commutators [..[z0^2,z1^2]^2..,z_{n-1}^2].
WordExpr e_n_expr(const std::vector<WordExpr>& es);
/// Same with per-variable exponents: E over z_i^{k_i}; ks.size() == n >= 1.
WordExpr e_k_expr(const std::vector<std::int64_t>& ks, int n);
/// J over n+1 variables: [E_{k[n,0]}(z0..z_{n-1})^{2 m2}, z_n^2] where
/// ks = (k_0..k_{n-2}, m1, m2).
WordExpr j_k_expr(const std::vector<std::int64_t>& ks, int n);

/// Constant tuples for the J/E growth inequalities.
struct JConstants {
  std::vector<std::int64_t> k;     // (k0..k_{n-2}, m1, m2)
  std::vector<std::int64_t> khat;  // (k0..k_{n-2}, m1hat, m2hat)
  bool verified = false;           // inequalities re-checked on the result
};
JConstants choose_j_constants(const std::vector<Word>& xs, std::uint64_t budget = kDefaultBudget,
                              bool allow_provisional = false);

enum class ConstantStatus { verified, provisional };

/// The recursive word family over a tuple of consecutive-noncommuting
/// hyperbolic elements; expression variables are tuple positions.
struct TWordFamily {
  int n = 0;                                               // tuple length
  std::vector<Word> base;                                  // the tuple
  std::map<std::pair<int, int>, WordExpr> exprs;           // (j,i) -> T
  std::map<std::pair<int, int>, std::int64_t> constants;   // m_{j,i}
  std::map<std::pair<int, int>, ConstantStatus> status;    // of m_{j,i}
  std::map<std::pair<int, int>, Word> values;              // evaluated X_{j,i}

  const WordExpr& expr(int j, int i) const { return exprs.at({j, i}); }
  const WordExpr& root() const { return exprs.at({n, 0}); }
  std::optional<Word> value(int j, int i) const;
};
TWordFamily t_words(const std::vector<Word>& xs, std::uint64_t budget = kDefaultBudget);

/// The two companion words built over the doubled tuple
/// (x0,..,x_{n-1},x_{n-2},..,x0); expressed in the original n variables.
struct TPair {
  WordExpr first;
  WordExpr second;
  TWordFamily doubled;  // family over the doubled tuple
};
TPair t_prime_words(const std::vector<Word>& xs, std::uint64_t budget = kDefaultBudget);

/// Conjugation-rigid words for tuples of consecutive-noncommuting
/// hyperbolic elements, built through the J/E constituents.
struct PWords {
  JConstants jk;
  std::vector<WordExpr> W_exprs;     // n
  std::vector<WordExpr> What_exprs;  // n
  WordExpr E_expr;
  WordExpr Ehat_expr;
  std::vector<Word> xtilde;          // 2n+2 evaluated constituents (may be empty if unverified)
  bool constituents_verified = false;
  TWordFamily tfam;                  // over the xtilde tuple
  TPair tpair;                       // companions over the doubled xtilde tuple
  WordExpr P;
  WordExpr P1;   // P'
  WordExpr P2;   // P''
};
PWords p_words(const std::vector<Word>& xs, std::uint64_t budget = kDefaultBudget);

/// The general-tuple words: the tuple only needs to generate two
/// noncommuting hyperbolic elements. Witness words f_w, f_u1, f_u2, f_s
/// express the searched elements through the generators.
struct MWords {
  Word w, u1, u2, s;
  WordExpr fw, fu1, fu2, fs;
  std::vector<Word> xhat;  // 4n+6 tuple
  PWords inner;            // P-words over xhat
  WordExpr M;
  WordExpr M1;  // M'
  WordExpr M2;  // M''
};
MWords m_words(const std::vector<Word>& xs, std::uint64_t budget = kDefaultBudget);

}  // namespace verba
