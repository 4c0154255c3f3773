#include "verba/group.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace verba {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidOrder: return "InvalidOrder";
    case Errc::NonAssociative: return "NonAssociative";
    case Errc::NoIdentity: return "NoIdentity";
    case Errc::NoInverse: return "NoInverse";
    case Errc::UnknownFactor: return "UnknownFactor";
    case Errc::LetterOutOfRange: return "LetterOutOfRange";
    case Errc::SignatureMismatch: return "SignatureMismatch";
    case Errc::NotHyperbolic: return "NotHyperbolic";
    case Errc::NotSimple: return "NotSimple";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::PreconditionTooShort: return "PreconditionTooShort";
    case Errc::NoCommonStructure: return "NoCommonStructure";
    case Errc::BallTooLarge: return "BallTooLarge";
    case Errc::WindowTooSmall: return "WindowTooSmall";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::BadArity: return "BadArity";
    case Errc::CommutingPair: return "CommutingPair";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::StructureMismatch: return "StructureMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownSuite: return "UnknownSuite";
  }
  return "Error";
}

FactorGroup FactorGroup::cyclic(int n) {
  if (n < 2) fail(Errc::InvalidOrder, "cyclic factor needs order >= 2, got " + std::to_string(n));
  if (n > 0xffff) fail(Errc::InvalidOrder, "factor order too large");
  FactorGroup g;
  g.order_ = n;
  g.mult_.resize(std::size_t(n) * n);
  g.inv_.resize(std::size_t(n));
  for (int i = 0; i < n; ++i) {
    g.inv_[std::size_t(i)] = Elt((n - i) % n);
    for (int j = 0; j < n; ++j) g.mult_[std::size_t(i) * n + j] = Elt((i + j) % n);
  }
  return g;
}

FactorGroup FactorGroup::from_table(const std::vector<std::vector<int>>& table) {
  const int n = int(table.size());
  if (n < 2) fail(Errc::InvalidOrder, "group table needs order >= 2");
  if (n > 0xffff) fail(Errc::InvalidOrder, "factor order too large");
  for (const auto& row : table) {
    if (int(row.size()) != n) fail(Errc::InvalidOrder, "group table is not square");
    for (int v : row)
      if (v < 0 || v >= n) fail(Errc::LetterOutOfRange, "table entry out of range: " + std::to_string(v));
  }

  // Locate the identity before validating anything else.
  int id = -1;
  for (int e = 0; e < n && id < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = table[std::size_t(e)][std::size_t(g)] == g && table[std::size_t(g)][std::size_t(e)] == g;
    if (ok) id = e;
  }
  if (id < 0) fail(Errc::NoIdentity, "table has no two-sided identity element");

  // Re-index so the identity is element 0.
  std::vector<int> perm(table.size(), 0);  // old index -> new index
  for (int i = 0; i < n; ++i) perm[std::size_t(i)] = i == id ? 0 : (i < id ? i + 1 : i);

  FactorGroup g;
  g.order_ = n;
  g.mult_.assign(std::size_t(n) * n, 0);
  g.inv_.assign(std::size_t(n), 0);
  std::vector<int> unperm(table.size(), 0);
  for (int i = 0; i < n; ++i) unperm[std::size_t(perm[std::size_t(i)])] = i;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int prod = table[std::size_t(unperm[std::size_t(a)])][std::size_t(unperm[std::size_t(b)])];
      g.mult_[std::size_t(a) * n + b] = Elt(perm[std::size_t(prod)]);
    }

  for (int a = 0; a < n; ++a) {
    int found = -1;
    for (int b = 0; b < n; ++b)
      if (g.mult(Elt(a), Elt(b)) == 0 && g.mult(Elt(b), Elt(a)) == 0) found = b;
    if (found < 0)
      fail(Errc::NoInverse, "element " + std::to_string(unperm[std::size_t(a)]) + " has no two-sided inverse");
    g.inv_[std::size_t(a)] = Elt(found);
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mult(g.mult(Elt(a), Elt(b)), Elt(c)) != g.mult(Elt(a), g.mult(Elt(b), Elt(c))))
          fail(Errc::NonAssociative,
               "associativity fails at triple (" + std::to_string(unperm[std::size_t(a)]) + "," +
                   std::to_string(unperm[std::size_t(b)]) + "," + std::to_string(unperm[std::size_t(c)]) + ")");
  return g;
}

Elt FactorGroup::power(Elt a, std::int64_t e) const {
  Elt base = e >= 0 ? a : inv(a);
  std::uint64_t k = e >= 0 ? std::uint64_t(e) : std::uint64_t(-(e + 1)) + 1;
  // Element order divides the group order, so reduce the exponent first.
  std::uint64_t ord = 1;
  Elt x = base;
  while (x != 0) {
    x = mult(x, base);
    ++ord;
  }
  k %= ord;
  Elt acc = 0;
  for (std::uint64_t i = 0; i < k; ++i) acc = mult(acc, base);
  return acc;
}

bool FactorGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (mult(Elt(a), Elt(b)) != mult(Elt(b), Elt(a))) return false;
  return true;
}

std::optional<Elt> FactorGroup::conjugator(Elt g, Elt h) const {
  if (g >= order_ || h >= order_) fail(Errc::LetterOutOfRange, "element index out of range");
  for (int t = 0; t < order_; ++t)
    if (mult(mult(inv(Elt(t)), g), Elt(t)) == h) return Elt(t);
  return std::nullopt;
}

Signature::Signature(std::vector<FactorGroup> factors, std::vector<std::string> names)
    : factors_(std::move(factors)), names_(std::move(names)) {
  if (factors_.size() < 2) fail(Errc::InvalidOrder, "a free product needs at least two factors");
  if (factors_.size() > 0xffff) fail(Errc::InvalidOrder, "too many factors");
  if (names_.empty()) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i < 26)
        names_.push_back(std::string(1, char('a' + i)));
      else
        names_.push_back("f" + std::to_string(i));
    }
  }
  if (names_.size() != factors_.size()) fail(Errc::InvalidOrder, "factor name count mismatch");
}

const FactorGroup& Signature::factor(int i) const {
  if (i < 0 || i >= factor_count()) fail(Errc::UnknownFactor, "unknown factor index " + std::to_string(i));
  return factors_[std::size_t(i)];
}

int Signature::factor_by_name(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return int(i);
  return -1;
}

bool Signature::operator==(const Signature& other) const {
  return factors_ == other.factors_;
}

namespace {

SignaturePtr parse_cyclic_spec(const std::string& spec) {
  std::vector<FactorGroup> factors;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t next = spec.find('*', pos);
    std::string part = spec.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (part.empty() || (part[0] != 'Z' && part[0] != 'z'))
      fail(Errc::ParseError, "bad factor spec '" + part + "' (expected Zn)");
    int n = 0;
    try {
      n = std::stoi(part.substr(1));
    } catch (const std::exception&) {
      fail(Errc::ParseError, "bad factor order in '" + part + "'");
    }
    factors.push_back(FactorGroup::cyclic(n));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return std::make_shared<Signature>(std::move(factors));
}

}  // namespace

SignaturePtr parse_group_table(const std::string& text) {
  std::istringstream in(text);
  std::vector<FactorGroup> factors;
  std::string tok;
  while (in >> tok) {
    if (tok != "order") fail(Errc::ParseError, "expected 'order', got '" + tok + "'");
    int n = 0;
    if (!(in >> n) || n < 1) fail(Errc::ParseError, "bad order value");
    std::vector<std::vector<int>> table(std::size_t(n), std::vector<int>(std::size_t(n), 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!(in >> table[std::size_t(i)][std::size_t(j)])) fail(Errc::ParseError, "truncated group table");
    factors.push_back(FactorGroup::from_table(table));
  }
  if (factors.size() < 2) fail(Errc::ParseError, "table file must define at least two factors");
  return std::make_shared<Signature>(std::move(factors));
}

SignaturePtr parse_group_spec(const std::string& spec) {
  if (spec.rfind("table:", 0) == 0) {
    std::ifstream in(spec.substr(6));
    if (!in) fail(Errc::ParseError, "cannot open group table file '" + spec.substr(6) + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_group_table(buf.str());
  }
  return parse_cyclic_spec(spec);
}

}  // namespace verba
