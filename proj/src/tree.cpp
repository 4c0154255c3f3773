#include "verba/tree.hpp"

#include <deque>

namespace verba {

std::string TreeLength::str() const {
  if (half_units % 2 == 0) return std::to_string(half_units / 2);
  return std::to_string(half_units) + "/2";
}

TreeVertex TreeVertex::coset(const Word& rep, int factor) {
  Word canonical = rep;
  if (!rep.empty() && int(rep.back().factor) == factor) {
    std::vector<Syllable> s(rep.syllables().begin(), rep.syllables().end() - 1);
    canonical = Word::trusted(rep.sig(), std::move(s));
  }
  return TreeVertex{true, std::move(canonical), std::uint16_t(factor)};
}

std::string TreeVertex::str() const {
  std::string body = format_word(rep);
  if (!is_coset) return body;
  return body + " H_" + rep.sig()->factor_name(int(factor));
}

std::size_t TreeVertexHash::operator()(const TreeVertex& v) const {
  std::size_t h = v.is_coset ? 0x9e3779b97f4a7c15ull : 0x517cc1b727220a95ull;
  h ^= std::size_t(v.factor) + 0x9e3779b9 + (h << 6) + (h >> 2);
  for (const Syllable& s : v.rep.syllables()) {
    std::size_t x = (std::size_t(s.factor) << 16) | s.letter;
    h ^= x + 0x9e3779b9 + (h << 6) + (h >> 2);
  }
  return h;
}

TreeVertex act(const Word& h, const TreeVertex& v) {
  check_same_signature(h, v.rep);
  Word moved = multiply(h, v.rep);
  if (!v.is_coset) return TreeVertex::element(std::move(moved));
  return TreeVertex::coset(moved, int(v.factor));
}

std::int64_t tree_distance(const TreeVertex& v1, const TreeVertex& v2) {
  check_same_signature(v1.rep, v2.rep);
  Word w = multiply(invert(v1.rep), v2.rep);
  std::int64_t m = std::int64_t(w.size());
  if (!v1.is_coset && !v2.is_coset) return 2 * m;
  if (v1.is_coset && v2.is_coset) {
    if (v1 == v2) return 0;
    std::int64_t d = 2 * m + 2;
    if (m >= 1 && w.front().factor == v1.factor) d -= 2;
    if (m >= 1 && w.back().factor == v2.factor) d -= 2;
    return d;
  }
  // One element vertex, one coset vertex.
  const TreeVertex& cos = v1.is_coset ? v1 : v2;
  if (v1.is_coset) w = invert(w);  // orient from the element vertex
  std::int64_t d = 2 * m + 1;
  if (m >= 1 && w.back().factor == cos.factor) d -= 2;
  return d;
}

namespace {

void push_neighbors(const TreeVertex& v, std::vector<TreeVertex>& out) {
  const SignaturePtr& sig = v.rep.sig();
  if (!v.is_coset) {
    for (int a = 0; a < sig->factor_count(); ++a) out.push_back(TreeVertex::coset(v.rep, a));
    return;
  }
  const FactorGroup& fg = sig->factor(int(v.factor));
  for (int e = 0; e < fg.order(); ++e) {
    std::vector<Syllable> s(v.rep.syllables().begin(), v.rep.syllables().end());
    if (e != 0) s.push_back(Syllable{v.factor, Elt(e)});
    out.push_back(TreeVertex::element(Word::trusted(sig, std::move(s))));
  }
}

}  // namespace

std::vector<TreeVertex> bfs_ball(const TreeVertex& center, int radius, std::size_t cap) {
  std::vector<TreeVertex> order{center};
  VertexSet seen{center};
  std::size_t level_start = 0;
  for (int depth = 0; depth < radius; ++depth) {
    std::size_t level_end = order.size();
    std::vector<TreeVertex> nbrs;
    for (std::size_t i = level_start; i < level_end; ++i) {
      nbrs.clear();
      push_neighbors(order[i], nbrs);
      for (TreeVertex& nb : nbrs) {
        if (seen.insert(nb).second) {
          order.push_back(std::move(nb));
          if (order.size() > cap)
            fail(Errc::BallTooLarge, "BFS ball exceeds vertex cap " + std::to_string(cap));
        }
      }
    }
    level_start = level_end;
  }
  return order;
}

std::optional<std::int64_t> bfs_distance(const TreeVertex& v1, const TreeVertex& v2, int max_radius) {
  if (v1 == v2) return 0;
  std::deque<std::pair<TreeVertex, std::int64_t>> queue{{v1, 0}};
  VertexSet seen{v1};
  std::vector<TreeVertex> nbrs;
  while (!queue.empty()) {
    auto [v, d] = queue.front();
    queue.pop_front();
    if (d >= max_radius) continue;
    nbrs.clear();
    push_neighbors(v, nbrs);
    for (TreeVertex& nb : nbrs) {
      if (nb == v2) return d + 1;
      if (seen.insert(nb).second) queue.emplace_back(std::move(nb), d + 1);
    }
  }
  return std::nullopt;
}

AxisSegment axis(const Word& h, int window) {
  auto [core, g] = cyclic_reduce(h);
  if (core.size() < 2) fail(Errc::NotHyperbolic, "axis is defined for hyperbolic elements only");
  const SignaturePtr& sig = h.sig();
  Word ginv = invert(g);
  std::int64_t n = std::int64_t(core.size());

  AxisSegment seg;
  // Vertices of the line: v_{k,0} = g^-1 A^k H_(factor of last syllable),
  // then alternately the elements g^-1 A^k s_1..s_i and the cosets
  // g^-1 A^k s_1..s_i H_(factor of s_i).
  for (std::int64_t k = -window; k <= window + 1; ++k) {
    Word base = multiply(ginv, power(core, k));
    seg.vertices.push_back(TreeVertex::coset(base, int(core.back().factor)));
    if (k == window + 1) break;  // close the segment with the final coset
    seg.vertices.push_back(TreeVertex::element(base));
    Word cur = base;
    for (std::int64_t i = 1; i < n; ++i) {
      std::vector<Syllable> one{core[std::size_t(i - 1)]};
      cur = multiply(cur, Word::trusted(sig, std::move(one)));
      seg.vertices.push_back(TreeVertex::coset(cur, int(core[std::size_t(i - 1)].factor)));
      seg.vertices.push_back(TreeVertex::element(cur));
    }
  }
  return seg;
}

TreeLength translation_length(const Word& h) {
  AxisSegment seg = axis(h, 0);
  std::int64_t best = -1;
  for (const TreeVertex& v : seg.vertices) {
    std::int64_t d = tree_distance(v, act(h, v));
    if (best < 0 || d < best) best = d;
  }
  return TreeLength{best};
}

AxisOverlap axis_overlap(const Word& h1, const Word& h2, int window) {
  if (commutator(h1, h2).empty()) return AxisOverlap{AxisOverlap::Kind::line, TreeLength{0}};
  AxisSegment a1 = axis(h1, window);
  AxisSegment a2 = axis(h2, window);
  VertexSet set2(a2.vertices.begin(), a2.vertices.end());
  std::vector<std::size_t> common;  // indices into a1.vertices
  for (std::size_t i = 0; i < a1.vertices.size(); ++i)
    if (set2.count(a1.vertices[i])) common.push_back(i);
  if (common.empty()) return AxisOverlap{AxisOverlap::Kind::disjoint, TreeLength{0}};
  // Two lines in a tree meet in a path: the common vertices must be a
  // contiguous run of each enumeration.
  for (std::size_t j = 1; j < common.size(); ++j)
    if (common[j] != common[j - 1] + 1)
      fail(Errc::WindowTooSmall, "axis overlap is not contiguous within the window");
  auto touches_boundary = [&](const TreeVertex& v) {
    return v == a1.vertices.front() || v == a1.vertices.back() || v == a2.vertices.front() ||
           v == a2.vertices.back();
  };
  if (touches_boundary(a1.vertices[common.front()]) || touches_boundary(a1.vertices[common.back()]))
    fail(Errc::WindowTooSmall, "axis overlap touches the enumeration window boundary");
  return AxisOverlap{AxisOverlap::Kind::segment, TreeLength{std::int64_t(common.size()) - 1}};
}

}  // namespace verba
