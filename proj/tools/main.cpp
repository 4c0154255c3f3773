#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "verba/periodic.hpp"
#include "verba/runword.hpp"
#include "verba/tree.hpp"
#include "verba/verify.hpp"

using json = nlohmann::ordered_json;
using namespace verba;

namespace {

struct Output {
  std::string command;
  std::string group;
  json inputs = json::object();
  json results = json::object();
  json failures = json::array();
  json seed;  // null unless a seeded command ran
  bool as_json = false;
  std::vector<std::string> text_lines;

  void line(const std::string& s) { text_lines.push_back(s); }
  void emit() const {
    if (as_json) {
      json out{{"command", command}, {"group", group},       {"inputs", inputs},
               {"results", results}, {"failures", failures}, {"seed", seed}};
      std::cout << out.dump(2) << '\n';
      return;
    }
    for (const std::string& s : text_lines) std::cout << s << '\n';
  }
};

std::uint64_t default_budget() {
  if (const char* env = std::getenv("VERBA_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

TreeVertex parse_vertex(const SignaturePtr& sig, const std::string& text) {
  if (!text.empty() && text[0] == '@') {
    std::size_t space = text.find(' ');
    std::string fname = text.substr(1, space == std::string::npos ? std::string::npos : space - 1);
    int f = sig->factor_by_name(fname);
    if (f < 0) fail(Errc::ParseError, "unknown factor '" + fname + "' in vertex literal");
    Word rep = parse_word(sig, space == std::string::npos ? "" : text.substr(space + 1));
    return TreeVertex::coset(rep, f);
  }
  return TreeVertex::element(parse_word(sig, text));
}

json word_json(const Word& w) { return format_word(w); }

void analyze_word(Output& out, const SignaturePtr& sig, const std::string& literal) {
  Word w = parse_word(sig, literal);
  out.inputs["word"] = literal;
  out.results["reduced"] = word_json(w);
  out.results["length"] = length(w);
  out.results["central_length"] = central_length(w);
  out.results["cyclically_reduced"] = is_cyclically_reduced(w);
  bool hyp = is_hyperbolic(w);
  out.results["hyperbolic"] = hyp;
  out.results["simple"] = is_simple(w);
  out.line("word: " + literal);
  out.line("reduced: " + format_word(w));
  out.line("|w| = " + std::to_string(length(w)));
  out.line("|w|_c = " + std::to_string(central_length(w)));
  out.line(std::string("cyclically reduced: ") + (is_cyclically_reduced(w) ? "yes" : "no"));
  out.line(std::string("hyperbolic: ") + (hyp ? "yes" : "no"));
  if (hyp) {
    HypDecomposition d = hyperbolic_decompose(w);
    out.results["radical_length"] = radical_length(w);
    out.results["decomposition"] =
        json{{"A", word_json(d.A)}, {"k", d.k}, {"f", word_json(d.f)}};
    out.line("|w|_r = " + std::to_string(radical_length(w)));
    out.line("decomposition: A = " + format_word(d.A) + ", k = " + std::to_string(d.k) +
             ", f = " + format_word(d.f));
  }
  out.line(std::string("simple: ") + (is_simple(w) ? "yes" : "no"));
}

void report_to_output(Output& out, const SuiteReport& r) {
  json jr{{"suite", r.suite},     {"trials", r.trials},         {"passed", r.passed},
          {"vacuous", r.vacuous}, {"elapsed_ms", r.elapsed_ms}, {"ok", r.ok()}};
  out.results["suites"].push_back(jr);
  for (const Counterexample& c : r.failures)
    out.failures.push_back(json{{"suite", r.suite}, {"trial", c.trial}, {"what", c.description}});
  out.line(r.to_text());
}

std::string status_name(ConstantStatus s) {
  return s == ConstantStatus::verified ? "verified" : "provisional";
}

void manifest_family(Output& out, const TWordFamily& fam, const std::string& prefix) {
  for (const auto& [key, value] : fam.constants) {
    std::string name =
        prefix + "m_" + std::to_string(key.first) + "_" + std::to_string(key.second);
    out.line(name + "=" + std::to_string(value));
    out.line(name + ".status=" + status_name(fam.status.at(key)));
    out.results["constants"][name] = value;
    out.results["constants"][name + ".status"] = status_name(fam.status.at(key));
  }
  for (const auto& [key, value] : fam.values) {
    std::string name =
        prefix + "X_" + std::to_string(key.first) + "_" + std::to_string(key.second);
    out.line(name + ".length=" + std::to_string(value.size()));
    out.results["values"][name] = std::int64_t(value.size());
  }
}

void dump_expr(Output& out, const std::string& name, const WordExpr& e) {
  std::string dump = dump_slp(e);
  out.results["slp"][name] = dump;
  json sums = json::array();
  for (std::int64_t s : e.exponent_sums()) sums.push_back(s);
  out.results["exponent_sums"][name] = sums;
  out.results["nodes"][name] = e.node_count();
  out.line("# slp " + name + " (" + std::to_string(e.node_count()) + " nodes)");
  std::istringstream lines(dump);
  std::string l;
  while (std::getline(lines, l)) out.line(l);
  std::string sumline = "# exponent sums:";
  for (std::int64_t s : e.exponent_sums()) sumline += " " + std::to_string(s);
  out.line(sumline);
}

std::vector<Word> parse_tuple(const SignaturePtr& sig, const std::string& text) {
  std::vector<Word> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!part.empty()) out.push_back(parse_word(sig, part));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) fail(Errc::ParseError, "empty tuple literal");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verba: exact word calculus in free products of finite groups"};
  app.require_subcommand(1);

  std::string group = "Z2*Z3";
  std::string group_file;
  std::string format = "text";
  std::int64_t samples = 100;
  std::uint64_t seed = 1;
  std::uint64_t budget = default_budget();
  int window = 4;
  int max_len = 3;
  app.add_option("--group", group, "group spec, e.g. Z2*Z3 or table:<file>")->capture_default_str();
  app.add_option("--group-file", group_file, "group table file (same as --group table:<file>)");
  app.add_option("--format", format, "output format: text|json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--samples", samples, "trials per suite")->capture_default_str();
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--budget", budget, "syllable budget for evaluations")->capture_default_str();
  app.add_option("--window", window, "axis window (tree commands)")->capture_default_str();
  app.add_option("--max-len", max_len, "solver word-length bound")->capture_default_str();

  auto* cmd_analyze = app.add_subcommand("analyze", "reduced form, lengths, decomposition");
  std::string analyze_literal;
  cmd_analyze->add_option("word", analyze_literal, "word literal")->required();

  auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  cmd_verify->add_option("suite", suite, "suite name or 'all'")->required();

  auto* cmd_build = app.add_subcommand("build", "emit a word family as an SLP dump");
  std::string family;
  std::string tuple_literal = "a b,a b^2";
  std::string constants_literal;
  int arity = 2;
  cmd_build->add_option("family", family, "l2|en|jk|twords|pwords|mwords")->required();
  cmd_build->add_option("--tuple", tuple_literal, "comma-separated word literals")
      ->capture_default_str();
  cmd_build->add_option("--constants", constants_literal, "comma-separated constants for jk");
  cmd_build->add_option("--n", arity, "variable count for en/jk")->capture_default_str();

  auto* cmd_tree = app.add_subcommand("tree", "Bass-Serre tree queries");
  cmd_tree->require_subcommand(1);
  auto* tree_dist = cmd_tree->add_subcommand("dist", "distance between two vertices");
  std::string v1lit, v2lit;
  tree_dist->add_option("v1", v1lit, "vertex: word, or @<factor> word for a coset")->required();
  tree_dist->add_option("v2", v2lit, "vertex")->required();
  auto* tree_axis = cmd_tree->add_subcommand("axis", "invariant line of a hyperbolic element");
  std::string axis_lit;
  tree_axis->add_option("word", axis_lit, "hyperbolic word literal")->required();
  auto* tree_translen = cmd_tree->add_subcommand("translen", "translation length");
  std::string translen_lit;
  tree_translen->add_option("word", translen_lit, "hyperbolic word literal")->required();
  auto* tree_overlap = cmd_tree->add_subcommand("overlap", "axis overlap of two elements");
  std::string o1lit, o2lit;
  tree_overlap->add_option("w1", o1lit, "hyperbolic word literal")->required();
  tree_overlap->add_option("w2", o2lit, "hyperbolic word literal")->required();

  auto* cmd_slp = app.add_subcommand("slp", "straight-line program utilities");
  cmd_slp->require_subcommand(1);
  auto* slp_stats = cmd_slp->add_subcommand("stats", "node counts, exponent sums, length bound");
  std::string slp_file;
  std::string input_lengths;
  slp_stats->add_option("file", slp_file, "SLP dump file")->required();
  slp_stats->add_option("--input-lengths", input_lengths, "comma-separated |z_i| values");

  // Global options may follow the subcommand name.
  for (CLI::App* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (CLI::App* nested : sub->get_subcommands({})) nested->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  Output out;
  out.as_json = format == "json";
  if (!group_file.empty()) group = "table:" + group_file;
  out.group = group;

  try {
    SignaturePtr sig = parse_group_spec(group);

    if (*cmd_analyze) {
      out.command = "analyze";
      analyze_word(out, sig, analyze_literal);
    } else if (*cmd_verify) {
      out.command = "verify";
      out.seed = seed;
      out.inputs = json{{"suite", suite}, {"samples", samples}, {"seed", seed}};
      out.results["suites"] = json::array();
      bool ok = true;
      if (suite == "all") {
        for (const std::string& name : suite_names()) {
          SuiteReport r = run_suite(name, sig, samples, seed, budget);
          report_to_output(out, r);
          ok = ok && r.ok();
        }
      } else {
        SuiteReport r = run_suite(suite, sig, samples, seed, budget);
        report_to_output(out, r);
        ok = r.ok();
      }
      out.results["ok"] = ok;
      out.emit();
      return ok ? 0 : 1;
    } else if (*cmd_build) {
      out.command = "build";
      out.inputs = json{{"family", family}, {"tuple", tuple_literal}};
      if (family == "l2") {
        dump_expr(out, "L2", l2_expr(WordExpr::var(0), WordExpr::var(1)));
      } else if (family == "en") {
        std::vector<WordExpr> vars;
        for (int i = 0; i < arity; ++i) vars.push_back(WordExpr::var(i));
        dump_expr(out, "E" + std::to_string(arity), e_n_expr(vars));
      } else if (family == "jk") {
        std::vector<std::int64_t> ks;
        std::istringstream cs(constants_literal);
        std::string tok;
        while (std::getline(cs, tok, ',')) ks.push_back(std::stoll(tok));
        if (ks.empty()) ks.assign(std::size_t(arity) + 1, 1);
        dump_expr(out, "J", j_k_expr(ks, arity));
      } else if (family == "twords") {
        std::vector<Word> xs = parse_tuple(sig, tuple_literal);
        TWordFamily fam = t_words(xs, budget);
        dump_expr(out, "T", fam.root());
        TPair pair = t_prime_words(xs, budget);
        dump_expr(out, "T1", pair.first);
        dump_expr(out, "T2", pair.second);
        out.line("# constants");
        manifest_family(out, fam, "T.");
        manifest_family(out, pair.doubled, "Tpair.");
      } else if (family == "pwords") {
        std::vector<Word> xs = parse_tuple(sig, tuple_literal);
        PWords p = p_words(xs, budget);
        dump_expr(out, "P", p.P);
        dump_expr(out, "P1", p.P1);
        dump_expr(out, "P2", p.P2);
        out.line("# constants");
        out.results["j_constants_verified"] = p.jk.verified;
        out.line(std::string("jk.verified=") + (p.jk.verified ? "1" : "0"));
        for (std::size_t i = 0; i < p.jk.k.size(); ++i) {
          out.line("jk.k" + std::to_string(i) + "=" + std::to_string(p.jk.k[i]));
          out.line("jk.khat" + std::to_string(i) + "=" + std::to_string(p.jk.khat[i]));
        }
        manifest_family(out, p.tfam, "P.");
      } else if (family == "mwords") {
        std::vector<Word> xs = parse_tuple(sig, tuple_literal);
        MWords m = m_words(xs, budget);
        dump_expr(out, "M", m.M);
        dump_expr(out, "M1", m.M1);
        dump_expr(out, "M2", m.M2);
        out.line("# constants");
        out.line("w=" + format_word(m.w));
        out.line("u1=" + format_word(m.u1));
        out.line("u2=" + format_word(m.u2));
        out.line("s=" + format_word(m.s));
        out.results["witnesses"] =
            json{{"w", word_json(m.w)}, {"u1", word_json(m.u1)}, {"u2", word_json(m.u2)}, {"s", word_json(m.s)}};
        manifest_family(out, m.inner.tfam, "M.");
      } else {
        fail(Errc::ParseError, "unknown family '" + family + "'");
      }
    } else if (*cmd_tree) {
      out.command = "tree";
      if (*tree_dist) {
        TreeVertex a = parse_vertex(sig, v1lit);
        TreeVertex b = parse_vertex(sig, v2lit);
        std::int64_t edges = tree_distance(a, b);
        out.inputs = json{{"v1", v1lit}, {"v2", v2lit}};
        out.results["edges"] = edges;
        out.results["distance"] = TreeLength{edges}.str();
        out.line("d(" + a.str() + ", " + b.str() + ") = " + TreeLength{edges}.str() + " (" +
                 std::to_string(edges) + " edges)");
      } else if (*tree_axis) {
        Word h = parse_word(sig, axis_lit);
        AxisSegment seg = axis(h, window);
        out.inputs = json{{"word", axis_lit}, {"window", window}};
        out.results["vertices"] = json::array();
        for (const TreeVertex& v : seg.vertices) {
          out.results["vertices"].push_back(v.str());
          out.line(v.str());
        }
        out.results["natural_length"] = seg.natural_length().str();
      } else if (*tree_translen) {
        Word h = parse_word(sig, translen_lit);
        TreeLength t = translation_length(h);
        out.inputs = json{{"word", translen_lit}};
        out.results["translation_length"] = t.str();
        out.results["central_length"] = central_length(h);
        out.line("translation length = " + t.str() + " = |h|_c = " +
                 std::to_string(central_length(h)));
      } else if (*tree_overlap) {
        Word h1 = parse_word(sig, o1lit);
        Word h2 = parse_word(sig, o2lit);
        AxisOverlap o = axis_overlap(h1, h2, window);
        out.inputs = json{{"w1", o1lit}, {"w2", o2lit}, {"window", window}};
        switch (o.kind) {
          case AxisOverlap::Kind::line:
            out.results["overlap"] = "coincide";
            out.line("axes coincide (elements commute)");
            break;
          case AxisOverlap::Kind::disjoint:
            out.results["overlap"] = "disjoint";
            out.line("axes disjoint within window " + std::to_string(window));
            break;
          case AxisOverlap::Kind::segment:
            out.results["overlap"] = o.length.str();
            out.line("|I| = " + o.length.str());
            break;
        }
      }
    } else if (*cmd_slp) {
      out.command = "slp";
      std::ifstream in(slp_file);
      if (!in) fail(Errc::ParseError, "cannot open '" + slp_file + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      WordExpr e = parse_slp(buf.str());
      out.inputs = json{{"file", slp_file}};
      out.results["nodes"] = e.node_count();
      out.results["arity"] = e.arity();
      json sums = json::array();
      for (std::int64_t s : e.exponent_sums()) sums.push_back(s);
      out.results["exponent_sums"] = sums;
      std::vector<BigInt> lens;
      if (!input_lengths.empty()) {
        std::istringstream ls(input_lengths);
        std::string tok;
        while (std::getline(ls, tok, ',')) lens.emplace_back(std::stoll(tok));
      } else {
        lens.assign(std::size_t(e.arity()), BigInt(1));
      }
      BigInt bound = e.length_upper_bound(lens);
      out.results["length_upper_bound"] = bound.str();
      out.line("nodes: " + std::to_string(e.node_count()));
      out.line("arity: " + std::to_string(e.arity()));
      std::string sumline = "exponent sums:";
      for (std::int64_t s : e.exponent_sums()) sumline += " " + std::to_string(s);
      out.line(sumline);
      out.line("length upper bound: " + bound.str());
    }
    out.emit();
    return 0;
  } catch (const Error& e) {
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << '\n';
    bool usage = e.code() == Errc::ParseError || e.code() == Errc::UnknownSuite ||
                 e.code() == Errc::UnknownFactor || e.code() == Errc::BadArity;
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
