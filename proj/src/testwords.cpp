#include "verba/testwords.hpp"

#include <algorithm>

namespace verba {

namespace {

void require_hyperbolic(const Word& w, const char* who) {
  if (!is_hyperbolic(w)) fail(Errc::NotHyperbolic, std::string(who) + ": element is not hyperbolic");
}

void require_noncommuting(const Word& u, const Word& v, const char* who) {
  if (commutator(u, v).empty())
    fail(Errc::CommutingPair, std::string(who) + ": the pair commutes");
}

std::uint64_t checked_mul_bound(std::uint64_t a, std::uint64_t b, std::uint64_t budget) {
  std::uint64_t bound = a + b;
  if (bound > budget) throw BudgetError("product would exceed the syllable budget", bound);
  return bound;
}

Word checked_power(const Word& w, std::int64_t e, std::uint64_t budget) {
  std::uint64_t reps = e >= 0 ? std::uint64_t(e) : std::uint64_t(-(e + 1)) + 1;
  std::uint64_t bound = reps * std::uint64_t(w.size());
  if (bound > budget && reps > 1) {
    // |w^e| = e|core| + 2|f| is usually far below e|w|.
    auto [core, f] = cyclic_reduce(w);
    bound = reps * std::uint64_t(core.size()) + 2 * std::uint64_t(f.size());
  }
  if (bound > budget) throw BudgetError("power would exceed the syllable budget", bound);
  return power(w, e);
}

Word checked_comm(const Word& u, const Word& v, std::uint64_t budget) {
  checked_mul_bound(2 * std::uint64_t(u.size()), 2 * std::uint64_t(v.size()), budget);
  return commutator(u, v);
}

/// True iff y lies in the cyclic group generated by the simple word B.
bool in_cyclic(const Word& y, const Word& B) {
  if (y.empty()) return true;
  if (y.size() % B.size() != 0) return false;
  std::int64_t m = std::int64_t(y.size() / B.size());
  return y == power(B, m) || y == power(B, -m);
}

}  // namespace

CommutatorAxisData commutator_axis_data(const Word& X1, const Word& X2, std::int64_t k,
                                        std::uint64_t budget) {
  require_hyperbolic(X1, "commutator_axis_data");
  require_hyperbolic(X2, "commutator_axis_data");
  require_noncommuting(X1, X2, "commutator_axis_data");
  if (k < 1) fail(Errc::InvalidOrder, "commutator_axis_data: k must be >= 1");

  Word a = checked_power(X1, 10, budget);
  Word b = checked_power(X2, 10 * k, budget);
  Word c = checked_comm(a, b, budget);
  HypDecomposition d = hyperbolic_decompose(c);  // hyperbolic since the X_i are
  const Word& B = d.A;
  std::int64_t l = d.k;
  std::int64_t blen = l * std::int64_t(B.size());

  std::int64_t range = 2 * l + 4;
  for (std::int64_t step = 0; step <= 2 * range; ++step) {
    std::int64_t j = step % 2 == 1 ? (step + 1) / 2 : -(step / 2);
    Word s = multiply(invert(d.f), power(B, j));
    Word Y1 = conjugate(X1, s);
    Word Y2 = conjugate(X2, s);
    Word Y2k;
    try {
      Y2k = checked_power(Y2, k, budget);
    } catch (const BudgetError&) {
      continue;
    }
    bool small_enough =
        4 * blen > std::int64_t(Y1.size()) && 4 * blen > std::int64_t(Y2k.size());
    if (!small_enough) continue;
    if (in_cyclic(Y1, B) || in_cyclic(Y2, B)) continue;
    return CommutatorAxisData{B, l, std::move(s), std::move(Y1), std::move(Y2), d.f, k};
  }
  fail(Errc::SearchExhausted, "commutator_axis_data: no conjugator f^-1 B^j with |j| <= " +
                                  std::to_string(range) + " met the size conditions");
}

std::int64_t kappa(std::int64_t N, const Word& X1, const Word& X2, std::uint64_t budget) {
  require_hyperbolic(X1, "kappa");
  require_hyperbolic(X2, "kappa");
  require_noncommuting(X1, X2, "kappa");
  std::int64_t k = 1;
  std::int64_t last = 0;
  for (int probe = 0; probe < 4000; ++probe) {
    std::uint64_t est = 20 * std::uint64_t(X1.size()) + 20 * std::uint64_t(k) * X2.size() + 8;
    if (est > budget)
      fail(Errc::SearchExhausted,
           "kappa: syllable budget reached at k=" + std::to_string(k) + " (largest tried " +
               std::to_string(last) + ")");
    last = k;
    try {
      CommutatorAxisData d = commutator_axis_data(X1, X2, k, budget);
      if (d.l <= 2 && std::int64_t(d.B.size()) > N &&
          4 * std::int64_t(d.B.size()) > std::int64_t(d.s.size()))
        return k;
    } catch (const Error& e) {
      if (e.code() != Errc::SearchExhausted && e.code() != Errc::BudgetExceeded) throw;
    }
    // Exhaustive for small k, geometric beyond; every downstream use
    // re-verifies the conditions at the chosen constant.
    k = k < 64 ? k + 1 : k + std::max<std::int64_t>(1, k / 2);
  }
  fail(Errc::SearchExhausted, "kappa: no admissible k found, largest tried " + std::to_string(last));
}

WordExpr l2_expr(const WordExpr& e0, const WordExpr& e1) {
  WordExpr c = WordExpr::comm(WordExpr::pow(e0, 10), WordExpr::pow(e1, 10));
  return WordExpr::product({WordExpr::pow(c, 5000), e0, WordExpr::pow(c, 200), e1,
                            WordExpr::pow(c, 400), WordExpr::inv(e0), WordExpr::pow(c, 600),
                            WordExpr::inv(e1), WordExpr::pow(c, 5000)});
}

Word l2_value(const Word& a, const Word& b, std::uint64_t budget) {
  Word c = checked_comm(checked_power(a, 10, budget), checked_power(b, 10, budget), budget);
  std::uint64_t bound = 11200 * std::uint64_t(c.size()) + 2 * (a.size() + b.size());
  if (bound > budget) throw BudgetError("L2 value would exceed the syllable budget", bound);
  Word c5000 = power(c, 5000);
  Word acc = c5000;
  acc = multiply(acc, a);
  acc = multiply(acc, power(c, 200));
  acc = multiply(acc, b);
  acc = multiply(acc, power(c, 400));
  acc = multiply(acc, invert(a));
  acc = multiply(acc, power(c, 600));
  acc = multiply(acc, invert(b));
  acc = multiply(acc, c5000);
  return acc;
}

namespace {

bool starts_and_ends_with(const Word& w, const Word& prefix) {
  if (w.size() < 2 * prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (!(w[i] == prefix[i]) || !(w[w.size() - prefix.size() + i] == prefix[i])) return false;
  return true;
}

}  // namespace

WStructure w_structure(const Word& X1, const Word& X2, std::int64_t k, std::uint64_t budget) {
  CommutatorAxisData axis = commutator_axis_data(X1, X2, k, budget);
  const Word& B = axis.B;
  std::int64_t l = axis.l;
  std::int64_t blen = l * std::int64_t(B.size());
  std::uint64_t west = 11220 * std::uint64_t(blen) + 2 * axis.s.size();
  if (west > budget) throw BudgetError("W structure would exceed the syllable budget", west);

  Word B10 = power(B, 10 * l);
  Word Y2k = power(axis.Y2, k);
  std::array<Word, 4> T{
      multiply(multiply(B10, axis.Y1), B10),
      multiply(multiply(B10, Y2k), B10),
      multiply(multiply(B10, invert(axis.Y1)), B10),
      multiply(multiply(B10, invert(Y2k)), B10),
  };
  std::array<Word, 4> R{power(B, 180 * l), power(B, 380 * l), power(B, 580 * l),
                        power(B, 9980 * l)};
  Word W = Word::identity(X1.sig());
  for (int i = 0; i < 4; ++i) W = multiply(multiply(W, T[std::size_t(i)]), R[std::size_t(i)]);

  auto mismatch = [](const std::string& what) {
    fail(Errc::StructureMismatch, "w_structure: " + what);
  };
  for (const Word& t : T) {
    if (!starts_and_ends_with(t, B)) mismatch("a T part does not start and end with B");
    if (!(4 * blen < std::int64_t(t.size()) && std::int64_t(t.size()) < 25 * blen))
      mismatch("a T part violates the 4|B^l| < |T| < 25|B^l| bounds");
  }
  if (!is_cyclically_reduced(W)) mismatch("W is not cyclically reduced");
  if (!(11136 * blen < std::int64_t(W.size()) && std::int64_t(W.size()) < 11220 * blen))
    mismatch("W violates the 11136|B^l| < |W| < 11220|B^l| bounds");

  Word conjugator = multiply(axis.s, power(B, 4990 * l));
  Word l2val = l2_value(X1, checked_power(X2, k, budget), budget);
  if (conjugate(l2val, conjugator) != W) mismatch("conjugation identity failed to reassemble");
  if (central_length(l2val) != std::int64_t(W.size()))
    mismatch("W is not the cyclically reduced form of the L2 value");

  return WStructure{std::move(axis), std::move(T), std::move(R), std::move(W), std::move(conjugator)};
}

WordExpr e_n_expr(const std::vector<WordExpr>& es) {
  if (es.size() < 2) fail(Errc::BadArity, "e_n needs at least two arguments");
  WordExpr acc = WordExpr::comm(WordExpr::pow(es[0], 2), WordExpr::pow(es[1], 2));
  for (std::size_t i = 2; i < es.size(); ++i)
    acc = WordExpr::comm(WordExpr::pow(acc, 2), WordExpr::pow(es[i], 2));
  return acc;
}

WordExpr e_k_expr(const std::vector<std::int64_t>& ks, int n) {
  if (n < 2 || int(ks.size()) != n) fail(Errc::BadArity, "e_k needs n >= 2 exponents");
  for (std::int64_t v : ks)
    if (v < 1) fail(Errc::BadArity, "e_k exponents must be positive");
  WordExpr acc = WordExpr::pow(WordExpr::var(0), ks[0]);
  for (int j = 1; j < n; ++j)
    acc = WordExpr::comm(WordExpr::pow(acc, 2), WordExpr::pow(WordExpr::var(j), 2 * ks[std::size_t(j)]));
  return acc;
}

WordExpr j_k_expr(const std::vector<std::int64_t>& ks, int n) {
  if (n < 2 || int(ks.size()) != n + 1) fail(Errc::BadArity, "j_k needs n+1 constants");
  std::vector<std::int64_t> prefix(ks.begin(), ks.begin() + n);
  WordExpr e = e_k_expr(prefix, n);
  return WordExpr::comm(WordExpr::pow(e, 2 * ks[std::size_t(n)]),
                        WordExpr::pow(WordExpr::var(n), 2));
}

namespace {

// E_{k[j,0]} evaluated directly at words; ks.size() == xs.size().
Word e_value(const std::vector<Word>& xs, const std::vector<std::int64_t>& ks,
             std::uint64_t budget) {
  Word acc = checked_power(xs[0], ks[0], budget);
  for (std::size_t j = 1; j < xs.size(); ++j)
    acc = checked_comm(checked_power(acc, 2, budget),
                       checked_power(xs[j], 2 * ks[j], budget), budget);
  return acc;
}

Word j_value(const Word& e, std::int64_t m2, const Word& target, std::uint64_t budget) {
  return checked_comm(checked_power(e, 2 * m2, budget), checked_power(target, 2, budget), budget);
}

std::optional<std::int64_t> radical_if_hyperbolic(const Word& w) {
  if (!is_hyperbolic(w)) return std::nullopt;
  return radical_length(w);
}

// Constants k0..k_{n-2} making the last exponent a growth direction.
std::vector<std::int64_t> growth_constants(const std::vector<Word>& xs, std::uint64_t budget) {
  if (xs.size() == 2) return {1};
  std::vector<Word> prefix(xs.begin(), xs.end() - 1);
  std::vector<std::int64_t> ks = growth_constants(prefix, budget);
  std::int64_t want = radical_length(xs.back());
  for (std::int64_t cand = 1; cand < 4000; ++cand) {
    std::vector<std::int64_t> trial = ks;
    trial.push_back(cand);
    Word e = e_value(prefix, trial, budget);
    auto r = radical_if_hyperbolic(e);
    if (r && *r > want) {
      ks.push_back(cand);
      return ks;
    }
  }
  fail(Errc::SearchExhausted, "growth_constants: no admissible exponent below the cap");
}

}  // namespace

JConstants choose_j_constants(const std::vector<Word>& xs, std::uint64_t budget,
                              bool allow_provisional) {
  const int n = int(xs.size());
  if (n < 2) fail(Errc::BadArity, "choose_j_constants needs a tuple of length >= 2");
  for (const Word& x : xs) require_hyperbolic(x, "choose_j_constants");
  for (int i = 0; i + 1 < n; ++i) require_noncommuting(xs[std::size_t(i)], xs[std::size_t(i) + 1], "choose_j_constants");

  try {
    std::vector<std::int64_t> ks = growth_constants(xs, budget);

    std::int64_t M = 0;
    for (const Word& x : xs) M = std::max(M, radical_length(x));

    auto search = [&](std::vector<std::int64_t> base, std::int64_t from, std::int64_t target,
                      const char* what) {
      for (std::int64_t m = from; m < from + 4000; ++m) {
        std::vector<std::int64_t> trial = base;
        trial.push_back(m);
        Word e = e_value(xs, trial, budget);
        auto r = radical_if_hyperbolic(e);
        if (r && *r > target) return m;
      }
      fail(Errc::SearchExhausted, std::string("choose_j_constants: ") + what);
    };

    std::int64_t m1 = search(ks, 1, M, "no m1 below the cap");
    std::vector<std::int64_t> full = ks;
    full.push_back(m1);
    Word E = e_value(xs, full, budget);
    std::int64_t m1hat = search(ks, m1 + 1, radical_length(E), "no m1hat below the cap");
    std::vector<std::int64_t> fullhat = ks;
    fullhat.push_back(m1hat);
    Word Ehat = e_value(xs, fullhat, budget);

    auto min_j_radical = [&](const Word& e, std::int64_t m2) -> std::optional<std::int64_t> {
      std::optional<std::int64_t> worst;
      for (const Word& x : xs) {
        auto r = radical_if_hyperbolic(j_value(e, m2, x, budget));
        if (!r) return std::nullopt;
        if (!worst || *r < *worst) worst = r;
      }
      return worst;
    };
    auto max_j_radical = [&](const Word& e, std::int64_t m2) {
      std::int64_t best = 0;
      for (const Word& x : xs) best = std::max(best, radical_length(j_value(e, m2, x, budget)));
      return best;
    };

    std::int64_t m2 = 0;
    for (std::int64_t m = 1; m < 4000 && m2 == 0; ++m) {
      auto worst = min_j_radical(E, m);
      if (worst && *worst > radical_length(Ehat)) m2 = m;
    }
    if (m2 == 0) fail(Errc::SearchExhausted, "choose_j_constants: no m2 below the cap");

    std::int64_t m2hat = 0;
    std::int64_t bar = max_j_radical(E, m2);
    for (std::int64_t m = 1; m < 4000 && m2hat == 0; ++m) {
      auto worst = min_j_radical(Ehat, m);
      if (worst && *worst > bar) m2hat = m;
    }
    if (m2hat == 0) fail(Errc::SearchExhausted, "choose_j_constants: no m2hat below the cap");

    JConstants out;
    out.k = ks;
    out.k.push_back(m1);
    out.k.push_back(m2);
    out.khat = ks;
    out.khat.push_back(m1hat);
    out.khat.push_back(m2hat);

    // Re-verify both inequality chains on the returned tuples.
    std::int64_t minJ = *min_j_radical(E, m2);
    if (!(minJ > radical_length(Ehat) && radical_length(Ehat) > radical_length(E)))
      fail(Errc::StructureMismatch, "choose_j_constants: chain a) failed on the result");
    if (!(*min_j_radical(Ehat, m2hat) > max_j_radical(E, m2)))
      fail(Errc::StructureMismatch, "choose_j_constants: chain b) failed on the result");
    out.verified = true;
    return out;
  } catch (const Error& e) {
    if (!allow_provisional ||
        (e.code() != Errc::BudgetExceeded && e.code() != Errc::SearchExhausted))
      throw;
    JConstants out;
    out.k.assign(std::size_t(n) + 1, 1);
    out.khat.assign(std::size_t(n) + 1, 1);
    out.verified = false;
    return out;
  }
}

std::optional<Word> TWordFamily::value(int j, int i) const {
  auto it = values.find({j, i});
  if (it == values.end()) return std::nullopt;
  return it->second;
}

namespace {

TWordFamily build_t_family(const std::vector<std::optional<Word>>& tuple, int len,
                           std::uint64_t budget) {
  TWordFamily fam;
  fam.n = len;
  for (int i = 0; i < len; ++i) {
    fam.exprs.emplace(std::make_pair(1, i), WordExpr::var(i));
    if (tuple[std::size_t(i)]) {
      fam.values.emplace(std::make_pair(1, i), *tuple[std::size_t(i)]);
      fam.base.push_back(*tuple[std::size_t(i)]);
    }
  }
  for (int j = 2; j <= len; ++j) {
    for (int i = 0; i + j <= len; ++i) {
      std::int64_t m_prev = i == 0 ? 1 : fam.constants.at({j, i - 1});
      auto left_val = fam.value(j - 1, i);
      auto right_val = fam.value(j - 1, i + 1);

      std::int64_t m_cur = 1;
      ConstantStatus st = ConstantStatus::provisional;
      if (left_val && right_val) {
        try {
          if (i == 0) {
            m_cur = kappa(1, *left_val, *right_val, budget);
          } else {
            auto prev_val = fam.value(j, i - 1);
            if (prev_val) {
              Word powered = checked_power(*left_val, m_prev, budget);
              m_cur = kappa(std::int64_t(prev_val->size()), powered, *right_val, budget);
            } else {
              throw BudgetError("previous level value unavailable", 0);
            }
          }
          st = ConstantStatus::verified;
        } catch (const Error& e) {
          if (e.code() != Errc::BudgetExceeded && e.code() != Errc::SearchExhausted) throw;
          m_cur = 1;
          st = ConstantStatus::provisional;
        }
      }
      fam.constants.emplace(std::make_pair(j, i), m_cur);
      fam.status.emplace(std::make_pair(j, i), st);
      fam.exprs.emplace(std::make_pair(j, i),
                        l2_expr(WordExpr::pow(fam.expr(j - 1, i), m_prev),
                                WordExpr::pow(fam.expr(j - 1, i + 1), m_cur)));

      if (left_val && right_val && st == ConstantStatus::verified) {
        try {
          Word a = checked_power(*left_val, m_prev, budget);
          Word b = checked_power(*right_val, m_cur, budget);
          Word x = l2_value(a, b, budget);
          if (!is_hyperbolic(x))
            fail(Errc::StructureMismatch, "t_words: an evaluated level word is not hyperbolic");
          if (checked_comm(*left_val, *right_val, 4 * budget).empty())
            fail(Errc::StructureMismatch, "t_words: consecutive level words commute");
          fam.values.emplace(std::make_pair(j, i), std::move(x));
        } catch (const BudgetError&) {
          // value unavailable at this budget; deeper constants go provisional
        }
      }
    }
  }
  return fam;
}

std::vector<std::optional<Word>> wrap_values(const std::vector<Word>& xs) {
  std::vector<std::optional<Word>> out;
  out.reserve(xs.size());
  for (const Word& x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TWordFamily t_words(const std::vector<Word>& xs, std::uint64_t budget) {
  const int n = int(xs.size());
  if (n < 2) fail(Errc::BadArity, "t_words needs a tuple of length >= 2");
  for (const Word& x : xs) require_hyperbolic(x, "t_words");
  for (int i = 0; i + 1 < n; ++i)
    require_noncommuting(xs[std::size_t(i)], xs[std::size_t(i) + 1], "t_words");
  return build_t_family(wrap_values(xs), n, budget);
}

namespace {

TPair t_pair_from(const std::vector<std::optional<Word>>& doubled, int n, std::uint64_t budget) {
  const int len = 2 * n - 1;
  TWordFamily fam = build_t_family(doubled, len, budget);
  std::vector<WordExpr> remap;
  remap.reserve(std::size_t(len));
  for (int p = 0; p < len; ++p) remap.push_back(WordExpr::var(p <= n - 1 ? p : 2 * n - 2 - p));
  TPair out{substitute(fam.expr(2 * n - 2, 0), remap), substitute(fam.expr(2 * n - 2, 1), remap),
            std::move(fam)};
  return out;
}

}  // namespace

TPair t_prime_words(const std::vector<Word>& xs, std::uint64_t budget) {
  const int n = int(xs.size());
  if (n < 2) fail(Errc::BadArity, "t_prime_words needs a tuple of length >= 2");
  std::vector<std::optional<Word>> doubled = wrap_values(xs);
  for (int p = n - 2; p >= 0; --p) doubled.emplace_back(xs[std::size_t(p)]);
  return t_pair_from(doubled, n, budget);
}

PWords p_words(const std::vector<Word>& xs, std::uint64_t budget) {
  const int n = int(xs.size());
  if (n < 2) fail(Errc::BadArity, "p_words needs a tuple of length >= 2");
  for (const Word& x : xs) require_hyperbolic(x, "p_words");
  for (int i = 0; i + 1 < n; ++i)
    require_noncommuting(xs[std::size_t(i)], xs[std::size_t(i) + 1], "p_words");

  PWords out;
  out.jk = choose_j_constants(xs, budget, /*allow_provisional=*/true);

  // W_i(z) = J_k(z0..z_{n-1}, z_i) expressed in the n tuple variables.
  std::vector<WordExpr> vars;
  for (int i = 0; i < n; ++i) vars.push_back(WordExpr::var(i));
  WordExpr jexpr = j_k_expr(out.jk.k, n);
  WordExpr jexpr_hat = j_k_expr(out.jk.khat, n);
  for (int i = 0; i < n; ++i) {
    std::vector<WordExpr> args = vars;
    args.push_back(WordExpr::var(i));
    out.W_exprs.push_back(substitute(jexpr, args));
    out.What_exprs.push_back(substitute(jexpr_hat, args));
  }
  std::vector<std::int64_t> eks(out.jk.k.begin(), out.jk.k.end() - 1);
  std::vector<std::int64_t> ekshat(out.jk.khat.begin(), out.jk.khat.end() - 1);
  out.E_expr = e_k_expr(eks, n);
  out.Ehat_expr = e_k_expr(ekshat, n);

  std::vector<std::optional<Word>> tilde(std::size_t(2 * n + 2), std::nullopt);
  if (out.jk.verified) {
    Word E = e_value(xs, eks, budget);
    Word Ehat = e_value(xs, ekshat, budget);
    std::vector<Word> X, Xhat;
    for (const Word& x : xs) {
      X.push_back(j_value(E, out.jk.k.back(), x, budget));
      Xhat.push_back(j_value(Ehat, out.jk.khat.back(), x, budget));
    }
    // Constituent conditions: hyperbolicity and the noncommutation chain.
    auto check = [](bool ok, const char* what) {
      if (!ok) fail(Errc::StructureMismatch, std::string("p_words: ") + what);
    };
    check(is_hyperbolic(E) && is_hyperbolic(Ehat), "E or Ehat is not hyperbolic");
    for (int i = 0; i < n; ++i) {
      check(is_hyperbolic(X[std::size_t(i)]) && is_hyperbolic(Xhat[std::size_t(i)]),
            "a J value is not hyperbolic");
      check(!commutator(X[std::size_t(i)], Xhat[std::size_t(i)]).empty(), "[X_i, Xhat_i] = 1");
      if (i + 1 < n)
        check(!commutator(Xhat[std::size_t(i)], X[std::size_t(i) + 1]).empty(),
              "[Xhat_i, X_{i+1}] = 1");
    }
    check(!commutator(Xhat[std::size_t(n - 1)], E).empty(), "[Xhat_{n-1}, E] = 1");
    check(!commutator(E, Ehat).empty(), "[E, Ehat] = 1");
    out.constituents_verified = true;

    for (int i = 0; i < n; ++i) {
      out.xtilde.push_back(X[std::size_t(i)]);
      out.xtilde.push_back(Xhat[std::size_t(i)]);
    }
    out.xtilde.push_back(E);
    out.xtilde.push_back(Ehat);
    for (std::size_t i = 0; i < out.xtilde.size(); ++i) tilde[i] = out.xtilde[i];
  }

  out.tfam = build_t_family(tilde, 2 * n + 2, budget);
  std::vector<std::optional<Word>> doubled = tilde;
  for (int p = 2 * n; p >= 0; --p) doubled.push_back(tilde[std::size_t(p)]);
  out.tpair = t_pair_from(doubled, 2 * n + 2, budget);

  std::vector<WordExpr> constituents;
  for (int i = 0; i < n; ++i) {
    constituents.push_back(out.W_exprs[std::size_t(i)]);
    constituents.push_back(out.What_exprs[std::size_t(i)]);
  }
  constituents.push_back(out.E_expr);
  constituents.push_back(out.Ehat_expr);
  out.P = substitute(out.tfam.root(), constituents);
  out.P1 = substitute(out.tpair.first, constituents);
  out.P2 = substitute(out.tpair.second, constituents);
  return out;
}

namespace {

struct FreeWordCandidate {
  WordExpr expr;
  Word value;
};

/// Freely reduced words over the generators, by length then by evaluated
/// length (ties keep enumeration order).
std::vector<FreeWordCandidate> free_word_candidates(const std::vector<Word>& xs, int len,
                                                    std::uint64_t budget) {
  const int n = int(xs.size());
  std::vector<std::vector<int>> seqs;  // letters: 2i = z_i, 2i+1 = z_i^-1
  std::vector<int> cur;
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == len) {
      seqs.push_back(cur);
      return;
    }
    for (int letter = 0; letter < 2 * n; ++letter) {
      if (!cur.empty() && (cur.back() ^ 1) == letter) continue;
      cur.push_back(letter);
      self(self, depth + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::vector<FreeWordCandidate> out;
  for (const auto& seq : seqs) {
    WordExpr e = WordExpr::one();
    Word v = Word::identity(xs[0].sig());
    bool first = true;
    for (int letter : seq) {
      WordExpr g = WordExpr::var(letter / 2);
      Word gv = xs[std::size_t(letter / 2)];
      if (letter % 2) {
        g = WordExpr::inv(g);
        gv = invert(gv);
      }
      e = first ? g : WordExpr::mul(e, g);
      checked_mul_bound(v.size(), gv.size(), budget);
      v = multiply(v, gv);
      first = false;
    }
    out.push_back(FreeWordCandidate{e, v});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const FreeWordCandidate& a, const FreeWordCandidate& b) {
                     return a.value.size() < b.value.size();
                   });
  return out;
}

}  // namespace

MWords m_words(const std::vector<Word>& xs, std::uint64_t budget) {
  const int n = int(xs.size());
  if (n < 1) fail(Errc::BadArity, "m_words needs a nonempty tuple");

  MWords out;
  constexpr int kMaxLen = 5;
  bool have_w = false, have_u1 = false, have_u2 = false, have_s = false;
  std::vector<Word> dot;  // the 2n+4 components

  for (int len = 1; len <= kMaxLen && !have_w; ++len)
    for (auto& cand : free_word_candidates(xs, len, budget)) {
      if (cand.value.empty()) continue;
      bool ok = true;
      for (const Word& x : xs) ok = ok && !multiply(x, cand.value).empty();
      if (ok) {
        out.w = cand.value;
        out.fw = cand.expr;
        have_w = true;
        break;
      }
    }
  if (!have_w) fail(Errc::SearchExhausted, "m_words: no w within the enumeration bound");

  auto xw = [&](int i) { return multiply(xs[std::size_t(i)], out.w); };

  for (int len = 1; len <= kMaxLen && !have_u1; ++len)
    for (auto& cand : free_word_candidates(xs, len, budget)) {
      if (!is_hyperbolic(cand.value)) continue;
      bool ok = !commutator(out.w, cand.value).empty();
      for (int i = 0; i < n && ok; ++i) ok = !commutator(xw(i), cand.value).empty();
      if (ok) {
        out.u1 = cand.value;
        out.fu1 = cand.expr;
        have_u1 = true;
        break;
      }
    }
  if (!have_u1) fail(Errc::SearchExhausted, "m_words: no u1 within the enumeration bound");

  for (int len = 1; len <= kMaxLen && !have_u2; ++len)
    for (auto& cand : free_word_candidates(xs, len, budget)) {
      if (!is_hyperbolic(cand.value)) continue;
      bool ok = !commutator(out.u1, cand.value).empty() &&
                !commutator(out.w, cand.value).empty();
      for (int i = 0; i < n && ok; ++i) ok = !commutator(xw(i), cand.value).empty();
      if (ok) {
        out.u2 = cand.value;
        out.fu2 = cand.expr;
        have_u2 = true;
        break;
      }
    }
  if (!have_u2) fail(Errc::SearchExhausted, "m_words: no u2 within the enumeration bound");

  for (int i = 0; i < n; ++i) {
    dot.push_back(commutator(xw(i), out.u1));
    dot.push_back(commutator(xw(i), out.u2));
  }
  dot.push_back(commutator(out.w, out.u1));
  dot.push_back(commutator(out.w, out.u2));
  dot.push_back(out.u1);
  dot.push_back(out.u2);
  for (const Word& d : dot)
    if (!is_hyperbolic(d))
      fail(Errc::StructureMismatch, "m_words: a tuple component is not hyperbolic");

  for (int len = 1; len <= kMaxLen && !have_s; ++len)
    for (auto& cand : free_word_candidates(xs, len, budget)) {
      if (!is_hyperbolic(cand.value)) continue;
      bool ok = true;
      for (const Word& d : dot) ok = ok && !commutator(d, cand.value).empty();
      if (ok) {
        out.s = cand.value;
        out.fs = cand.expr;
        have_s = true;
        break;
      }
    }
  if (!have_s) fail(Errc::SearchExhausted, "m_words: no s within the enumeration bound");

  // Interleave s between all adjacent components except the final (u1, u2).
  std::vector<WordExpr> witness;
  for (int i = 0; i < n; ++i) {
    WordExpr zi_w = WordExpr::mul(WordExpr::var(i), out.fw);
    out.xhat.push_back(dot[std::size_t(2 * i)]);
    witness.push_back(WordExpr::comm(zi_w, out.fu1));
    out.xhat.push_back(out.s);
    witness.push_back(out.fs);
    out.xhat.push_back(dot[std::size_t(2 * i + 1)]);
    witness.push_back(WordExpr::comm(zi_w, out.fu2));
    out.xhat.push_back(out.s);
    witness.push_back(out.fs);
  }
  out.xhat.push_back(commutator(out.w, out.u1));
  witness.push_back(WordExpr::comm(out.fw, out.fu1));
  out.xhat.push_back(out.s);
  witness.push_back(out.fs);
  out.xhat.push_back(commutator(out.w, out.u2));
  witness.push_back(WordExpr::comm(out.fw, out.fu2));
  out.xhat.push_back(out.s);
  witness.push_back(out.fs);
  out.xhat.push_back(out.u1);
  witness.push_back(out.fu1);
  out.xhat.push_back(out.u2);
  witness.push_back(out.fu2);

  if (int(out.xhat.size()) != 4 * n + 6)
    fail(Errc::StructureMismatch, "m_words: tuple length is not 4n+6");
  for (std::size_t i = 0; i + 1 < out.xhat.size(); ++i)
    if (commutator(out.xhat[i], out.xhat[i + 1]).empty())
      fail(Errc::StructureMismatch, "m_words: adjacent tuple components commute");

  out.inner = p_words(out.xhat, budget);
  out.M = substitute(out.inner.P, witness);
  out.M1 = substitute(out.inner.P1, witness);
  out.M2 = substitute(out.inner.P2, witness);
  return out;
}

}  // namespace verba
