#include "verba/slp.hpp"

#include <algorithm>
#include <sstream>

namespace verba {

struct WordExpr::Node {
  Kind kind = Kind::One;
  int var = 0;
  std::int64_t exp = 0;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
  int arity = 0;
  std::vector<std::int64_t> exp_sums;  // length = arity
};

namespace {

using NodePtr = std::shared_ptr<const WordExpr::Node>;

std::vector<std::int64_t> combine_sums(const NodePtr& l, const NodePtr& r, std::int64_t lc,
                                       std::int64_t rc, int arity) {
  std::vector<std::int64_t> out(std::size_t(arity), 0);
  if (l)
    for (std::size_t i = 0; i < l->exp_sums.size(); ++i) out[i] += lc * l->exp_sums[i];
  if (r)
    for (std::size_t i = 0; i < r->exp_sums.size(); ++i) out[i] += rc * r->exp_sums[i];
  return out;
}

}  // namespace

WordExpr::WordExpr() : node_(one().node_) {}

WordExpr WordExpr::one() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::One;
  return WordExpr(std::move(n));
}

WordExpr WordExpr::var(int index) {
  if (index < 0) fail(Errc::BadArity, "variable index must be nonnegative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = index;
  n->arity = index + 1;
  n->exp_sums.assign(std::size_t(index) + 1, 0);
  n->exp_sums[std::size_t(index)] = 1;
  return WordExpr(std::move(n));
}

WordExpr WordExpr::mul(const WordExpr& l, const WordExpr& r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mul;
  n->left = l.node_;
  n->right = r.node_;
  n->arity = std::max(l.node_->arity, r.node_->arity);
  n->exp_sums = combine_sums(l.node_, r.node_, 1, 1, n->arity);
  return WordExpr(std::move(n));
}

WordExpr WordExpr::inv(const WordExpr& e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inv;
  n->left = e.node_;
  n->arity = e.node_->arity;
  n->exp_sums = combine_sums(e.node_, nullptr, -1, 0, n->arity);
  return WordExpr(std::move(n));
}

WordExpr WordExpr::pow(const WordExpr& e, std::int64_t exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->left = e.node_;
  n->exp = exponent;
  n->arity = e.node_->arity;
  n->exp_sums = combine_sums(e.node_, nullptr, exponent, 0, n->arity);
  return WordExpr(std::move(n));
}

WordExpr WordExpr::comm(const WordExpr& l, const WordExpr& r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Comm;
  n->left = l.node_;
  n->right = r.node_;
  n->arity = std::max(l.node_->arity, r.node_->arity);
  n->exp_sums.assign(std::size_t(n->arity), 0);
  return WordExpr(std::move(n));
}

WordExpr WordExpr::product(const std::vector<WordExpr>& es) {
  if (es.empty()) return one();
  WordExpr acc = es.front();
  for (std::size_t i = 1; i < es.size(); ++i) acc = mul(acc, es[i]);
  return acc;
}

WordExpr::Kind WordExpr::kind() const { return node_->kind; }
int WordExpr::var_index() const { return node_->var; }
std::int64_t WordExpr::exponent() const { return node_->exp; }
WordExpr WordExpr::left() const { return WordExpr(node_->left); }
WordExpr WordExpr::right() const { return WordExpr(node_->right); }
int WordExpr::arity() const { return node_->arity; }

std::int64_t WordExpr::exponent_sum(int i) const {
  if (i < 0) fail(Errc::BadArity, "variable index must be nonnegative");
  if (i >= node_->arity) return 0;
  return node_->exp_sums[std::size_t(i)];
}

std::vector<std::int64_t> WordExpr::exponent_sums() const { return node_->exp_sums; }

namespace {

void collect_nodes(const WordExpr::Node* n, std::vector<const WordExpr::Node*>& order,
                   std::unordered_map<const WordExpr::Node*, std::size_t>& index) {
  if (!n || index.count(n)) return;
  collect_nodes(n->left.get(), order, index);
  collect_nodes(n->right.get(), order, index);
  index.emplace(n, order.size());
  order.push_back(n);
}

}  // namespace

std::size_t WordExpr::node_count() const {
  std::vector<const Node*> order;
  std::unordered_map<const Node*, std::size_t> index;
  collect_nodes(node_.get(), order, index);
  return order.size();
}

BigInt WordExpr::length_upper_bound(const std::vector<BigInt>& input_lengths) const {
  std::vector<const Node*> order;
  std::unordered_map<const Node*, std::size_t> index;
  collect_nodes(node_.get(), order, index);
  std::vector<BigInt> bound(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Node* n = order[i];
    switch (n->kind) {
      case Kind::One: bound[i] = 0; break;
      case Kind::Var:
        bound[i] = std::size_t(n->var) < input_lengths.size() ? input_lengths[std::size_t(n->var)] : BigInt(1);
        break;
      case Kind::Mul: bound[i] = bound[index[n->left.get()]] + bound[index[n->right.get()]]; break;
      case Kind::Inv: bound[i] = bound[index[n->left.get()]]; break;
      case Kind::Pow: {
        BigInt e = n->exp >= 0 ? n->exp : -n->exp;
        bound[i] = e * bound[index[n->left.get()]];
        break;
      }
      case Kind::Comm: bound[i] = 2 * (bound[index[n->left.get()]] + bound[index[n->right.get()]]); break;
    }
  }
  return bound.back();
}

namespace {

struct Evaluator {
  const std::vector<Word>& assignment;
  std::uint64_t budget;
  SignaturePtr sig;
  std::unordered_map<const WordExpr::Node*, Word> memo;

  void check(std::uint64_t bound) const {
    if (bound > budget)
      throw BudgetError("intermediate word would exceed the syllable budget (" +
                            std::to_string(bound) + " > " + std::to_string(budget) + ")",
                        bound);
  }

  const Word& eval(const WordExpr::Node* n) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Word result;
    switch (n->kind) {
      case WordExpr::Kind::One: result = Word::identity(sig); break;
      case WordExpr::Kind::Var: {
        if (n->var >= int(assignment.size()))
          fail(Errc::BadArity, "assignment too short for variable z" + std::to_string(n->var));
        result = assignment[std::size_t(n->var)];
        break;
      }
      case WordExpr::Kind::Mul: {
        const Word& l = eval(n->left.get());
        const Word& r = eval(n->right.get());
        check(std::uint64_t(l.size()) + std::uint64_t(r.size()));
        result = multiply(l, r);
        break;
      }
      case WordExpr::Kind::Inv: result = invert(eval(n->left.get())); break;
      case WordExpr::Kind::Pow: {
        const Word& base = eval(n->left.get());
        std::uint64_t e = n->exp >= 0 ? std::uint64_t(n->exp) : std::uint64_t(-(n->exp + 1)) + 1;
        std::uint64_t bound = e * std::uint64_t(base.size());
        if (bound > budget && e > 1) {
          // |base^e| = e|core| + 2|f| is the exact size of the result.
          auto [core, f] = cyclic_reduce(base);
          bound = e * std::uint64_t(core.size()) + 2 * std::uint64_t(f.size());
        }
        check(bound);
        result = power(base, n->exp);
        break;
      }
      case WordExpr::Kind::Comm: {
        const Word& l = eval(n->left.get());
        const Word& r = eval(n->right.get());
        check(2 * (std::uint64_t(l.size()) + std::uint64_t(r.size())));
        result = commutator(l, r);
        break;
      }
    }
    return memo.emplace(n, std::move(result)).first->second;
  }
};

}  // namespace

Word evaluate(const WordExpr& e, const std::vector<Word>& assignment, std::uint64_t budget) {
  if (int(assignment.size()) < e.arity())
    fail(Errc::BadArity, "assignment provides " + std::to_string(assignment.size()) +
                             " words for arity " + std::to_string(e.arity()));
  SignaturePtr sig;
  for (const Word& w : assignment)
    if (w.sig()) {
      sig = w.sig();
      break;
    }
  if (!sig) fail(Errc::SignatureMismatch, "assignment carries no signature");
  for (const Word& w : assignment) check_same_signature(assignment.front(), w);
  Evaluator ev{assignment, budget, sig, {}};
  return ev.eval(e.raw());
}

WordExpr substitute(const WordExpr& e, const std::vector<WordExpr>& replacements) {
  std::vector<const WordExpr::Node*> order;
  std::unordered_map<const WordExpr::Node*, std::size_t> index;
  collect_nodes(e.raw(), order, index);
  std::vector<WordExpr> rebuilt;
  rebuilt.reserve(order.size());
  for (const WordExpr::Node* n : order) {
    switch (n->kind) {
      case WordExpr::Kind::One: rebuilt.push_back(WordExpr::one()); break;
      case WordExpr::Kind::Var:
        if (std::size_t(n->var) >= replacements.size())
          fail(Errc::BadArity, "substitution misses variable z" + std::to_string(n->var));
        rebuilt.push_back(replacements[std::size_t(n->var)]);
        break;
      case WordExpr::Kind::Mul:
        rebuilt.push_back(WordExpr::mul(rebuilt[index[n->left.get()]], rebuilt[index[n->right.get()]]));
        break;
      case WordExpr::Kind::Inv: rebuilt.push_back(WordExpr::inv(rebuilt[index[n->left.get()]])); break;
      case WordExpr::Kind::Pow:
        rebuilt.push_back(WordExpr::pow(rebuilt[index[n->left.get()]], n->exp));
        break;
      case WordExpr::Kind::Comm:
        rebuilt.push_back(WordExpr::comm(rebuilt[index[n->left.get()]], rebuilt[index[n->right.get()]]));
        break;
    }
  }
  return rebuilt.back();
}

std::string dump_slp(const WordExpr& e) {
  std::vector<const WordExpr::Node*> order;
  std::unordered_map<const WordExpr::Node*, std::size_t> index;
  collect_nodes(e.raw(), order, index);
  std::ostringstream out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const WordExpr::Node* n = order[i];
    out << 'n' << i << " := ";
    switch (n->kind) {
      case WordExpr::Kind::One: out << "one"; break;
      case WordExpr::Kind::Var: out << "var " << n->var; break;
      case WordExpr::Kind::Mul:
        out << "mul n" << index[n->left.get()] << " n" << index[n->right.get()];
        break;
      case WordExpr::Kind::Inv: out << "inv n" << index[n->left.get()]; break;
      case WordExpr::Kind::Pow: out << "pow n" << index[n->left.get()] << ' ' << n->exp; break;
      case WordExpr::Kind::Comm:
        out << "comm n" << index[n->left.get()] << " n" << index[n->right.get()];
        break;
    }
    out << '\n';
  }
  out << "root n" << (order.size() - 1) << '\n';
  return out.str();
}

namespace {

std::size_t parse_ref(const std::string& tok, std::size_t limit) {
  if (tok.empty() || tok[0] != 'n') fail(Errc::ParseError, "bad node reference '" + tok + "'");
  std::size_t id = 0;
  try {
    id = std::stoull(tok.substr(1));
  } catch (const std::exception&) {
    fail(Errc::ParseError, "bad node reference '" + tok + "'");
  }
  if (id >= limit) fail(Errc::ParseError, "forward node reference '" + tok + "'");
  return id;
}

}  // namespace

WordExpr parse_slp(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<WordExpr> nodes;
  std::optional<std::size_t> root;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head.empty() || head[0] == '#') continue;
    if (head == "root") {
      std::string ref;
      ls >> ref;
      root = parse_ref(ref, nodes.size());
      continue;
    }
    std::string assign, op;
    ls >> assign >> op;
    if (assign != ":=") fail(Errc::ParseError, "expected ':=' in line '" + line + "'");
    if (parse_ref(head, nodes.size() + 1) != nodes.size())
      fail(Errc::ParseError, "nodes must be numbered consecutively: '" + line + "'");
    if (op == "one") {
      nodes.push_back(WordExpr::one());
    } else if (op == "var") {
      int v = -1;
      ls >> v;
      nodes.push_back(WordExpr::var(v));
    } else if (op == "inv") {
      std::string a;
      ls >> a;
      nodes.push_back(WordExpr::inv(nodes[parse_ref(a, nodes.size())]));
    } else if (op == "pow") {
      std::string a;
      std::int64_t e = 0;
      ls >> a >> e;
      nodes.push_back(WordExpr::pow(nodes[parse_ref(a, nodes.size())], e));
    } else if (op == "mul" || op == "comm") {
      std::string a, b;
      ls >> a >> b;
      const WordExpr& l = nodes[parse_ref(a, nodes.size())];
      const WordExpr& r = nodes[parse_ref(b, nodes.size())];
      nodes.push_back(op == "mul" ? WordExpr::mul(l, r) : WordExpr::comm(l, r));
    } else {
      fail(Errc::ParseError, "unknown op '" + op + "'");
    }
  }
  if (nodes.empty()) fail(Errc::ParseError, "empty SLP dump");
  return nodes[root.value_or(nodes.size() - 1)];
}

}  // namespace verba
