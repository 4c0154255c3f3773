#include "verba/runword.hpp"

#include <numeric>

namespace verba {

namespace {

Run trimmed(Run r) {
  r.start %= r.period();
  return r;
}

Run single(const SignaturePtr& sig, Syllable s) {
  std::vector<Syllable> one{s};
  return Run{std::make_shared<const Word>(Word::trusted(sig, std::move(one))), 0, 1};
}

void drop_front(std::vector<Run>& rs) {
  Run& r = rs.front();
  r.start = (r.start + 1) % r.period();
  if (--r.len == 0) rs.erase(rs.begin());
}

void drop_back(std::vector<Run>& rs) {
  Run& r = rs.back();
  if (--r.len == 0) rs.pop_back();
}

}  // namespace

RunWord RunWord::from_word(const Word& w) {
  std::vector<Run> runs;
  if (!w.empty()) runs.push_back(Run{std::make_shared<const Word>(w), 0, std::int64_t(w.size())});
  return RunWord(w.sig(), std::move(runs));
}

RunWord RunWord::from_power(const Word& base, std::int64_t count) {
  if (count == 0 || base.empty()) return identity(base.sig());
  if (count < 0) return from_power(verba::invert(base), -count);
  if (count > 1 && (base.size() < 2 || !is_cyclically_reduced(base)))
    fail(Errc::NotApplicable, "run base must be cyclically reduced of length >= 2");
  std::vector<Run> runs{Run{std::make_shared<const Word>(base), 0, count * std::int64_t(base.size())}};
  return RunWord(base.sig(), std::move(runs));
}

std::int64_t RunWord::total_length() const {
  std::int64_t total = 0;
  for (const Run& r : runs_) total += r.len;
  return total;
}

Word RunWord::flatten(std::uint64_t cap) const {
  if (std::uint64_t(total_length()) > cap)
    throw BudgetError("run word too long to flatten", std::uint64_t(total_length()));
  std::vector<Syllable> out;
  out.reserve(std::size_t(total_length()));
  for (const Run& r : runs_)
    for (std::int64_t i = 0; i < r.len; ++i) out.push_back(r.at(i));
  return Word::trusted(sig_, std::move(out));
}

void RunWord::append_run(Run incoming) {
  Run r = trimmed(incoming);
  std::int64_t streak = 0;  // consecutive cancellations against the same left run
  while (r.len > 0 && !runs_.empty()) {
    Run& left = runs_.back();
    Syllable a = left.at(left.len - 1);
    Syllable b = r.at(0);
    if (a.factor != b.factor) break;
    Elt prod = sig_->factor(int(a.factor)).mult(a.letter, b.letter);
    if (prod == 0) {
      left.len -= 1;
      r.start = (r.start + 1) % r.period();
      r.len -= 1;
      ++streak;
      if (left.len == 0) {
        runs_.pop_back();
        streak = 0;
        continue;
      }
      // Aligned power-against-power cancellation telescopes: once a full
      // p+q window cancelled at one seam, both periodic patterns agree
      // (Fine-Wilf), so whole gcd-blocks cancel while both runs last.
      std::int64_t p = left.period();
      std::int64_t q = r.period();
      if (streak >= p + q && r.len > 0) {
        std::int64_t g = std::gcd(p, q);
        std::int64_t bulk = std::min(left.len, r.len) - (p + q);
        if (bulk > 0) bulk -= bulk % g;
        if (bulk > 0) {
          left.len -= bulk;
          r.start = (r.start + bulk) % q;
          r.len -= bulk;
        }
      }
      continue;
    }
    // Merge: the seam syllables combine into one and reduction stops.
    left.len -= 1;
    if (left.len == 0) runs_.pop_back();
    r.start = (r.start + 1) % r.period();
    r.len -= 1;
    runs_.push_back(single(sig_, Syllable{a.factor, prod}));
    break;
  }
  if (r.len <= 0) return;
  if (!runs_.empty() && runs_.back().base == r.base &&
      (runs_.back().start + runs_.back().len) % r.period() == r.start) {
    runs_.back().len += r.len;  // contiguous phase: coalesce
    return;
  }
  runs_.push_back(r);
}

RunWord multiply(const RunWord& u, const RunWord& v) {
  if (u.sig_ && v.sig_ && !(u.sig_ == v.sig_ || *u.sig_ == *v.sig_))
    fail(Errc::SignatureMismatch, "run words belong to different free products");
  RunWord out = u;
  if (!out.sig_) out.sig_ = v.sig_;
  for (const Run& r : v.runs_) out.append_run(r);
  return out;
}

RunWord invert(const RunWord& u) {
  RunWord result = RunWord::identity(u.sig());
  result.runs_.reserve(u.runs_.size());
  for (auto it = u.runs_.rbegin(); it != u.runs_.rend(); ++it) {
    const Run& r = *it;
    std::int64_t p = r.period();
    Word ibase = invert(*r.base);
    std::int64_t istart = (p - (r.start + r.len) % p) % p;
    result.runs_.push_back(Run{std::make_shared<const Word>(std::move(ibase)), istart, r.len});
  }
  return result;
}

RunWord RunWord::power(std::int64_t n) const {
  if (n == 0) return identity(sig_);
  RunWord base = n > 0 ? *this : verba::invert(*this);
  std::int64_t reps = n > 0 ? n : -n;
  RunWord acc = base;
  for (std::int64_t i = 1; i < reps; ++i) acc = multiply(acc, base);
  return acc;
}

std::int64_t RunWord::cyclic_length() const {
  std::vector<Run> rs = runs_;
  std::int64_t total = total_length();
  std::int64_t guard = 0;
  while (total >= 2 && !rs.empty()) {
    if (++guard > (std::int64_t(1) << 31))
      fail(Errc::BudgetExceeded, "cyclic reduction of run word did not stabilize");
    Syllable first = rs.front().at(0);
    const Run& lastr = rs.back();
    Syllable last = lastr.at(lastr.len - 1);
    if (first.factor != last.factor) break;
    Elt prod = sig_->factor(int(first.factor)).mult(last.letter, first.letter);
    drop_front(rs);
    drop_back(rs);
    total -= 2;
    if (prod != 0) {
      RunWord tmp(sig_, std::move(rs));
      tmp.append_run(single(sig_, Syllable{first.factor, prod}));
      rs = std::move(tmp.runs_);
      total = 0;
      for (const Run& r : rs) total += r.len;
    }
  }
  return total;
}

bool RunWord::operator==(const RunWord& other) const {
  if (total_length() != other.total_length()) return false;
  return multiply(*this, invert(other)).is_identity();
}

}  // namespace verba
