// Command-line front end: exact skein-algebra arithmetic, quotient normal
// forms, theta evaluations, certificates, twist verification, and the
// packaged verification suites.  Exit codes: 0 success/consistent,
// 1 refuted/unequal, 2 usage or input error.
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "skein/algebra.hpp"
#include "skein/errors.hpp"
#include "skein/quotient.hpp"
#include "skein/reduce.hpp"
#include "skein/series.hpp"
#include "skein/suites.hpp"
#include "skein/theta.hpp"

using namespace skein;
using nlohmann::json;

namespace {

json read_stdin_json() {
  std::stringstream ss;
  ss << std::cin.rdbuf();
  return json::parse(ss.str());
}

std::vector<SkeinElement> read_elements(int expect_at_least) {
  json j = read_stdin_json();
  std::vector<SkeinElement> out;
  if (j.is_array())
    for (const auto& e : j) out.push_back(SkeinElement::from_json(e));
  else
    out.push_back(SkeinElement::from_json(j));
  if ((int)out.size() < expect_at_least)
    throw InvariantViolation("expected at least " + std::to_string(expect_at_least) +
                             " elements on standard input");
  return out;
}

SubsetCurve parse_subset(const std::string& s) {
  SubsetCurve out(0);
  uint64_t mask = 0;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int i = std::stoi(tok);
    if (i < 1 || i > 63) throw InvariantViolation("puncture index out of range");
    mask |= uint64_t(1) << (i - 1);
  }
  if (mask == 0) throw InvariantViolation("empty puncture set");
  return SubsetCurve(mask);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact engine for the Kauffman bracket skein algebra of a punctured disk"};
  app.require_subcommand(1);

  int b = 4, degree = 0, ev_n = 0, ev_m = 1, order = 2;
  unsigned seed = 2026;
  std::string relation, subset, suite_name;
  bool lantern = false, csv = false, products = false;

  auto* c_mul = app.add_subcommand("mul", "Product of the elements read from stdin");
  auto* c_lie = app.add_subcommand("lie", "Rescaled bracket of two elements from stdin");
  auto* c_eps = app.add_subcommand("eps", "Counit of the element read from stdin");
  auto* c_nf2 = app.add_subcommand("nf2", "Order-two quotient normal form of stdin");
  auto* c_word = app.add_subcommand("word-class", "Quotient class of a group word [[gen,exp],...]");
  auto* c_link = app.add_subcommand("link-class", "Quotient class of a link diagram (JSON)");
  auto* c_theta = app.add_subcommand("theta", "Theta evaluation of the element from stdin");
  auto* c_gram = app.add_subcommand("gram", "Theta product table over the basis representatives");
  c_gram->add_option("--b", b, "number of punctures")->required();
  c_gram->add_flag("--csv", csv, "emit CSV instead of JSON");
  c_gram->add_option("--seed", seed, "sampling seed");
  auto* c_ev = app.add_subcommand("ev", "Normalized theta jet against a multicurve");
  c_ev->add_option("--b", b, "number of punctures")->required();
  c_ev->add_option("--n", ev_n, "valuation to divide out")->required();
  c_ev->add_option("--m", ev_m, "modulus exponent")->required();
  auto* c_ftype = app.add_subcommand("ftype-check", "Alternating sublink sum of a multicurve");
  c_ftype->add_option("--b", b, "number of punctures")->required();
  c_ftype->add_option("--order", order, "vanishing order to check");
  auto* c_cert = app.add_subcommand("certify", "Filtration-degree divisibility certificate");
  c_cert->add_option("--degree", degree, "claimed filtration degree")->required();
  c_cert->add_flag("--products", products, "also test against pairwise products");
  c_cert->add_flag("--csv", csv, "emit CSV instead of JSON");
  auto* c_dehn = app.add_subcommand("dehn-verify", "Surgery vs exponential for one twist");
  c_dehn->add_option("--s", subset, "comma-separated puncture set of the twist curve")->required();
  auto* c_zeta = app.add_subcommand("zeta-check", "One presentation relation or the lantern");
  c_zeta->add_option("--relation", relation, "relation name 1..7");
  c_zeta->add_flag("--lantern", lantern, "check the lantern relation");
  c_zeta->add_option("--b", b, "number of punctures");
  auto* c_suite = app.add_subcommand("suite", "Packaged verification suites");
  c_suite->add_option("name", suite_name, "lemma42 | lemma56 | basis | braid | all")->required();
  c_suite->add_option("--b", b, "number of punctures");
  c_suite->add_option("--seed", seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_mul->parsed()) {
      auto xs = read_elements(1);
      SkeinElement acc = xs[0];
      for (size_t i = 1; i < xs.size(); ++i) acc = mul(acc, xs[i]);
      emit(acc.to_json());
      return 0;
    }
    if (c_lie->parsed()) {
      auto xs = read_elements(2);
      emit(lie(xs[0], xs[1]).to_json());
      return 0;
    }
    if (c_eps->parsed()) {
      auto xs = read_elements(1);
      Rational e = eps(xs[0]);
      std::cout << e << "\n";
      return 0;
    }
    if (c_nf2->parsed()) {
      auto xs = read_elements(1);
      emit(nf2(xs[0]).to_json());
      return 0;
    }
    if (c_word->parsed()) {
      json j = read_stdin_json();
      GroupWord w;
      for (const auto& l : j) w.letters.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
      emit(word_class(w).to_json());
      return 0;
    }
    if (c_link->parsed()) {
      Diagram d = Diagram::from_json(read_stdin_json());
      emit(link_class(d).to_json());
      return 0;
    }
    if (c_theta->parsed()) {
      auto xs = read_elements(1);
      emit(theta(xs[0]).to_json());
      return 0;
    }
    if (c_gram->parsed()) {
      GramResult g = gram(b, seed);
      if (csv)
        std::cout << g.to_csv();
      else
        emit(g.to_json());
      return (g.table_ok && g.independent) ? 0 : 1;
    }
    if (c_ev->parsed()) {
      json j = read_stdin_json();
      Multicurve L = Multicurve::from_json(j.at("L"), b);
      FormalProduct x = FormalProduct::from_element(SkeinElement::from_json(j.at("x")));
      emit(ev(L, x, ev_n, ev_m).to_json());
      return 0;
    }
    if (c_ftype->parsed()) {
      Multicurve m = Multicurve::from_json(read_stdin_json(), b);
      QuotClass2 q = ftype_sum_check(m, order);
      json out;
      out["class"] = q.to_json();
      out["verdict"] = q.is_zero() ? "zero" : "nonzero";
      emit(out);
      return q.is_zero() ? 0 : 1;
    }
    if (c_cert->parsed()) {
      auto xs = read_elements(1);
      int bb = xs[0].b;
      FormalProduct x = FormalProduct::from_element(xs[0]);
      // Test set: the quotient-basis representatives with their filtration
      // degrees, and optionally their pairwise products.
      std::vector<std::pair<std::string, std::pair<FormalProduct, int>>> tests;
      std::vector<std::pair<std::string, std::pair<FormalProduct, int>>> reps;
      reps.push_back({"h", {FormalProduct::from_element(
                               SkeinElement::unit(bb).scaled(LaurentPoly::h())),
                            2}});
      for (int i = 1; i <= bb; ++i)
        for (int j = i; j <= bb; ++j) {
          std::ostringstream lab;
          lab << "<" << i << "," << j << ">";
          reps.push_back({lab.str(),
                          {FormalProduct::from_element(basis_pair(i, j, bb)), 2}});
        }
      for (int i = 1; i <= bb; ++i)
        for (int j = i + 1; j <= bb; ++j)
          for (int k = j + 1; k <= bb; ++k) {
            std::ostringstream lab;
            lab << "<" << i << "," << j << "," << k << ">";
            reps.push_back({lab.str(),
                            {FormalProduct::from_element(basis_triple(i, j, k, bb)), 3}});
          }
      tests = reps;
      if (products)
        for (size_t i = 0; i < reps.size(); ++i)
          for (size_t j = i; j < reps.size(); ++j)
            tests.push_back({reps[i].first + "*" + reps[j].first,
                             {reps[i].second.first * reps[j].second.first,
                              reps[i].second.second + reps[j].second.second}});
      Certificate cert = divisibility_certificate(x, degree, tests);
      if (csv)
        std::cout << cert.to_csv();
      else
        emit(cert.to_json());
      return cert.consistent ? 0 : 1;
    }
    if (c_dehn->parsed()) {
      auto xs = read_elements(1);
      DehnReport rep = dehn_verify(parse_subset(subset), xs[0]);
      emit(rep.to_json());
      return rep.equal ? 0 : 1;
    }
    if (c_zeta->parsed()) {
      if (lantern == !relation.empty())
        throw InvariantViolation("pass exactly one of --relation and --lantern");
      ZetaReport rep = lantern ? zeta_check("lantern", b >= 3 ? 3 : b)
                               : zeta_check(relation, b);
      emit(rep.to_json());
      return rep.equal ? 0 : 1;
    }
    if (c_suite->parsed()) {
      std::vector<SuiteResult> results;
      if (suite_name == "lemma42")
        results.push_back(suite_product_table(b));
      else if (suite_name == "lemma56")
        results.push_back(suite_product_identities());
      else if (suite_name == "basis")
        results.push_back(suite_basis(b, 100, seed));
      else if (suite_name == "braid")
        results.push_back(suite_braid());
      else if (suite_name == "all")
        results = suite_all(seed);
      else
        throw InvariantViolation("unknown suite name");
      bool all_ok = true;
      json out = json::array();
      for (const auto& s : results) {
        out.push_back(s.to_json());
        all_ok = all_ok && s.passed();
      }
      emit(out);
      std::cout << (all_ok ? "PASS" : "FAIL") << "\n";
      return all_ok ? 0 : 1;
    }
  } catch (const json::exception& e) {
    std::cerr << "input error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
