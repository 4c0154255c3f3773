#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "verba/periodic.hpp"
#include "verba/runword.hpp"
#include "verba/tree.hpp"
#include "verba/verify.hpp"

namespace py = pybind11;
using namespace verba;

namespace {

py::dict report_dict(const SuiteReport& r) {
  py::dict d;
  d["suite"] = r.suite;
  d["trials"] = r.trials;
  d["passed"] = r.passed;
  d["vacuous"] = r.vacuous;
  d["ok"] = r.ok();
  d["seed"] = r.seed;
  d["elapsed_ms"] = r.elapsed_ms;
  py::list fails;
  for (const Counterexample& c : r.failures) {
    py::dict f;
    f["trial"] = c.trial;
    f["what"] = c.description;
    fails.append(f);
  }
  d["failures"] = fails;
  return d;
}

}  // namespace

PYBIND11_MODULE(_verba, m) {
  m.doc() = "Exact word calculus in free products of finite groups";

  py::register_exception<Error>(m, "VerbaError");

  py::class_<Signature, std::shared_ptr<Signature>>(m, "Signature")
      .def_static(
          "parse",
          [](const std::string& spec) { return std::const_pointer_cast<Signature>(parse_group_spec(spec)); },
          py::arg("spec"), "Parse a group spec such as 'Z2*Z3' or 'table:<file>'")
      .def_static("from_table_text", [](const std::string& text) {
        return std::const_pointer_cast<Signature>(parse_group_table(text));
      })
      .def_property_readonly("factor_count", &Signature::factor_count)
      .def("factor_order", [](const Signature& s, int i) { return s.factor(i).order(); })
      .def("factor_name", &Signature::factor_name)
      .def("__eq__", [](const Signature& a, const Signature& b) { return a == b; });

  py::class_<Word>(m, "Word")
      .def_static("parse", &parse_word, py::arg("sig"), py::arg("text"))
      .def_static("identity", &Word::identity)
      .def("__str__", &format_word)
      .def("__repr__", [](const Word& w) { return "Word('" + format_word(w) + "')"; })
      .def("__len__", [](const Word& w) { return w.size(); })
      .def("__eq__", [](const Word& a, const Word& b) { return a == b; })
      .def("__hash__",
           [](const Word& w) {
             std::size_t h = 1469598103934665603ull;
             for (const Syllable& s : w.syllables())
               h = (h ^ ((std::size_t(s.factor) << 16) | s.letter)) * 1099511628211ull;
             return h;
           })
      .def("__mul__", &multiply)
      .def("inverse", &invert)
      .def("pow", &power, py::arg("n"))
      .def("conjugate", &conjugate, py::arg("g"), "g^-1 . self . g")
      .def_property_readonly(
          "sig", [](const Word& w) { return std::const_pointer_cast<Signature>(w.sig()); });

  m.def("multiply", &multiply);
  m.def("invert", &invert);
  m.def("conjugate", &conjugate);
  m.def("power", &power);
  m.def("commutator", &commutator);
  m.def("length", &length);
  m.def("central_length", &central_length);
  m.def("is_cyclically_reduced", &is_cyclically_reduced);
  m.def("is_hyperbolic", &is_hyperbolic);
  m.def("is_simple", &is_simple);
  m.def("radical_length", &radical_length);
  m.def("cyclic_reduce", [](const Word& w) {
    auto [core, f] = cyclic_reduce(w);
    return py::make_tuple(core, f);
  });
  m.def("hyperbolic_decompose", [](const Word& w) {
    HypDecomposition d = hyperbolic_decompose(w);
    return py::make_tuple(d.A, d.k, d.f);
  });
  m.def("root", &root, py::arg("w"), py::arg("n"));
  m.def("centralizer_generator", &centralizer_generator);
  m.def("are_conjugate", &are_conjugate);

  m.def("is_subword", &is_subword);
  m.def("is_periodic", &is_periodic);
  m.def("fine_wilf_split", [](const Word& w1, const Word& w2, const Word& U) {
    PeriodSplit s = fine_wilf_split(w1, w2, U);
    return py::make_tuple(s.C1, s.C2, s.m1, s.m2);
  });
  m.def("p3_inverse_periodic", [](const Word& B) {
    PeriodSplit s = p3_inverse_periodic(B);
    return py::make_tuple(s.C1, s.C2);
  });
  m.def("p4_double_periodic", [](const Word& A, const Word& B, const Word& U) {
    PeriodSplit s = p4_double_periodic(A, B, U);
    return py::make_tuple(s.C1, s.C2);
  });

  py::class_<TreeVertex>(m, "TreeVertex")
      .def_static("element", &TreeVertex::element)
      .def_static("coset", &TreeVertex::coset, py::arg("rep"), py::arg("factor"))
      .def("__str__", &TreeVertex::str)
      .def("__eq__", [](const TreeVertex& a, const TreeVertex& b) { return a == b; });
  m.def("act", &act);
  m.def("tree_distance", &tree_distance, "Distance in edges of the bipartite tree");
  m.def("bfs_distance", &bfs_distance, py::arg("v1"), py::arg("v2"), py::arg("max_radius"));
  m.def("translation_length",
        [](const Word& h) { return translation_length(h).value(); });
  m.def("axis", [](const Word& h, int window) {
    AxisSegment seg = axis(h, window);
    py::list out;
    for (const TreeVertex& v : seg.vertices) out.append(v);
    return out;
  });
  m.def("axis_overlap", [](const Word& h1, const Word& h2, int window) -> py::object {
    AxisOverlap o = axis_overlap(h1, h2, window);
    if (o.kind == AxisOverlap::Kind::line) return py::str("coincide");
    if (o.kind == AxisOverlap::Kind::disjoint) return py::none();
    return py::float_(o.length.value());
  });

  py::class_<WordExpr>(m, "WordExpr")
      .def_static("one", &WordExpr::one)
      .def_static("var", &WordExpr::var)
      .def_static("mul", &WordExpr::mul)
      .def_static("inv", &WordExpr::inv)
      .def_static("pow", &WordExpr::pow)
      .def_static("comm", &WordExpr::comm)
      .def_property_readonly("arity", &WordExpr::arity)
      .def_property_readonly("node_count", &WordExpr::node_count)
      .def("exponent_sum", &WordExpr::exponent_sum)
      .def("exponent_sums", &WordExpr::exponent_sums)
      .def("length_upper_bound",
           [](const WordExpr& e, const std::vector<std::int64_t>& lens) {
             std::vector<BigInt> big(lens.begin(), lens.end());
             return py::cast(e.length_upper_bound(big).str());
           })
      .def("dump", [](const WordExpr& e) { return dump_slp(e); });
  m.def("parse_slp", &parse_slp);
  m.def("substitute", &substitute);
  m.def(
      "evaluate",
      [](const WordExpr& e, const std::vector<Word>& assignment, std::uint64_t budget) {
        return evaluate(e, assignment, budget);
      },
      py::arg("expr"), py::arg("assignment"), py::arg("budget") = kDefaultBudget);

  m.def("l2_expr", &l2_expr);
  m.def("l2_value", &l2_value, py::arg("a"), py::arg("b"), py::arg("budget") = kDefaultBudget);
  m.def("e_n_expr", &e_n_expr);
  m.def("e_k_expr", &e_k_expr);
  m.def("j_k_expr", &j_k_expr);
  m.def(
      "commutator_axis_data",
      [](const Word& X1, const Word& X2, std::int64_t k, std::uint64_t budget) {
        CommutatorAxisData d = commutator_axis_data(X1, X2, k, budget);
        py::dict out;
        out["B"] = d.B;
        out["l"] = d.l;
        out["s"] = d.s;
        out["Y1"] = d.Y1;
        out["Y2"] = d.Y2;
        return out;
      },
      py::arg("X1"), py::arg("X2"), py::arg("k"), py::arg("budget") = kDefaultBudget);
  m.def("kappa", &kappa, py::arg("N"), py::arg("X1"), py::arg("X2"),
        py::arg("budget") = kDefaultBudget);
  m.def(
      "w_structure",
      [](const Word& X1, const Word& X2, std::int64_t k, std::uint64_t budget) {
        WStructure w = w_structure(X1, X2, k, budget);
        py::dict out;
        out["W"] = w.W;
        out["conjugator"] = w.conjugator;
        py::list ts, rs;
        for (const Word& t : w.T) ts.append(t);
        for (const Word& r : w.R) rs.append(r);
        out["T"] = ts;
        out["R"] = rs;
        out["B"] = w.axis.B;
        out["l"] = w.axis.l;
        return out;
      },
      py::arg("X1"), py::arg("X2"), py::arg("k"), py::arg("budget") = kDefaultBudget);
  m.def(
      "t_words",
      [](const std::vector<Word>& xs, std::uint64_t budget) {
        TWordFamily fam = t_words(xs, budget);
        py::dict out;
        out["root"] = fam.root();
        py::dict constants, status;
        for (const auto& [key, value] : fam.constants) {
          std::string name = std::to_string(key.first) + "," + std::to_string(key.second);
          constants[py::str(name)] = value;
          status[py::str(name)] =
              fam.status.at(key) == ConstantStatus::verified ? "verified" : "provisional";
        }
        out["constants"] = constants;
        out["status"] = status;
        auto v = fam.value(fam.n, 0);
        out["value"] = v ? py::cast(*v) : py::none();
        return out;
      },
      py::arg("xs"), py::arg("budget") = kDefaultBudget);
  m.def(
      "m_words",
      [](const std::vector<Word>& xs, std::uint64_t budget) {
        MWords mw = m_words(xs, budget);
        py::dict out;
        out["M"] = mw.M;
        out["M1"] = mw.M1;
        out["M2"] = mw.M2;
        out["w"] = mw.w;
        out["u1"] = mw.u1;
        out["u2"] = mw.u2;
        out["s"] = mw.s;
        out["xhat"] = mw.xhat;
        return out;
      },
      py::arg("xs"), py::arg("budget") = std::uint64_t(1) << 27);

  m.def("enumerate_words", &enumerate_words, py::arg("sig"), py::arg("max_len"));
  m.def("run_suite", [](const std::string& name, const SignaturePtr& sig, std::int64_t samples,
                        std::uint64_t seed) { return report_dict(run_suite(name, sig, samples, seed)); },
        py::arg("name"), py::arg("sig"), py::arg("samples") = 100, py::arg("seed") = 1);
  m.def("suite_names", &suite_names);
  m.def("recover_conjugator", &recover_conjugator, py::arg("xs"), py::arg("ys"),
        py::arg("t_value"), py::arg("cap") = 3,
        py::arg("budget") = std::uint64_t(1) << 27);
  m.def(
      "solve_equation_system",
      [](const std::vector<std::pair<WordExpr, Word>>& eqs, int max_len) {
        EquationSystem sys;
        for (const auto& [lhs, rhs] : eqs) {
          sys.lhs.push_back(lhs);
          sys.rhs.push_back(rhs);
        }
        return solve_equation_system(sys, max_len);
      },
      py::arg("system"), py::arg("max_len"));
}
