#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "nahmforge/registry.hpp"
#include "nahmforge/tables.hpp"
#include "test_util.hpp"

using namespace nahmforge;
using nahmforge::testutil::expect_kind;

namespace {

CheckReport run(const Registry& reg, const std::string& id, int order) {
  return reg.check(reg.find(id), Rat(order));
}

}  // namespace

TEST_SUITE("registry") {

TEST_CASE("embedded data loads") {
  Registry reg = Registry::embedded();
  CHECK(reg.identities().size() == 75);
  std::map<std::string, int> byStatus;
  for (const auto& idn : reg.identities()) ++byStatus[idn.status];
  CHECK(byStatus["classical"] == 32);
  CHECK(byStatus["proved"] == 35);
  CHECK(byStatus["conjectural"] == 8);

  CHECK(reg.contains("rr-g"));
  CHECK(!reg.contains("nope"));
  CHECK(reg.find("thm3-10").kind == "nahm");
  CHECK(reg.find("bailey-cw1-T0").kind == "bailey");
  CHECK(reg.find("thm3-symmetry").kind == "symmetry");
  expect_kind("UnknownId", [&] { reg.find("nope"); });

  CHECK(Registry::default_order(reg.find("euler1")) == Rat(60));
  CHECK(Registry::default_order(reg.find("ct-f-1")) == Rat(20));
  CHECK(Registry::default_order(reg.find("thm3-1")) == Rat(40));

  // Sorted by id.
  for (std::size_t i = 1; i < reg.identities().size(); ++i)
    CHECK(reg.identities()[i - 1].id < reg.identities()[i].id);
}

TEST_CASE("one identity of every kind checks out") {
  Registry reg = Registry::embedded();
  for (const auto& [id, order] : std::vector<std::pair<std::string, int>>{
           {"rr-g", 30},       // nahm, rank 1
           {"euler1", 25},     // hyper
           {"jacobi", 20},     // product (triple-product instances)
           {"berndt-1", 20},   // product (weighted theta left side)
           {"S.48", 25},       // sumspec with a two-term right side
           {"bressoud", 20},   // sumspec with two indices
           {"thm1-1", 10},     // rank-4 with parameter samples
           {"thm3-2", 14},     // rank-4, nome q^2
           {"add-eq-F-1", 14},
           {"thm2-1", 14},
           {"conj-eq-2", 12},  // Laurent leading term
           {"z11-3", 12},
           {"thm3-symmetry", 12},
           {"thm2-0", 12},
           {"bailey-w-T1", 14},
           {"ct-f-2", 10},
       }) {
    CheckReport rep = run(reg, id, order);
    INFO(id << ": " << rep.result << " " << rep.instanceLabel << " "
            << rep.errorMessage);
    CHECK(rep.result == "match");
    CHECK(rep.id == id);
    CHECK(rep.order == Rat(order));
  }
}

TEST_CASE("check_all filters, ordering, and parallel mode") {
  Registry reg = Registry::embedded();
  auto two = reg.check_all({"rr-h", "rr-g"}, {}, Rat(15), 1);
  REQUIRE(two.size() == 2);
  CHECK(two[0].id == "rr-g");
  CHECK(two[1].id == "rr-h");
  CHECK(two[0].result == "match");
  CHECK(two[1].result == "match");

  auto conj = reg.check_all({}, {"conjectural"}, Rat(10), 1);
  REQUIRE(conj.size() == 8);
  for (const auto& rep : conj) {
    CHECK(rep.status == "conjectural");
    CHECK(rep.result == "match");
  }

  auto par = reg.check_all({"rr-h", "rr-g", "euler2"}, {}, Rat(15), 3);
  REQUIRE(par.size() == 3);
  auto ser = reg.check_all({"rr-h", "rr-g", "euler2"}, {}, Rat(15), 1);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(report_to_json(par[i]) == report_to_json(ser[i]));
}

TEST_CASE("derived ratio between the two bracketed right sides") {
  Registry reg = Registry::embedded();
  auto lhs_series = [&](const std::string& id, const Rat& order) {
    const RegInstance& ins = reg.find(id).instances.at(0);
    NahmTriple t = *ins.triple;
    if (!ins.args.empty())
      t = nahm_from_F(ins.args, t.A, t.B, ins.nomeScale, t.C);
    QSeries s = nahm_sum(t, ins.includeC, Rat(order) / ins.nomeScale);
    return substitute_power(s, ins.nomeScale);
  };
  QSeries ten = lhs_series("thm3-10", Rat(20));
  QSeries eleven = lhs_series("thm3-11", Rat(20));
  CHECK(equal_to_precision(eleven, mul_scalar(ten, Rat(2)), Rat(20)));
}

TEST_CASE("modular cross-checks agree with the tabled constants") {
  Registry reg = Registry::embedded();
  std::size_t checked = 0;
  for (const auto& idn : reg.identities()) {
    for (const auto& mc : reg.modular_cross_check(idn)) {
      INFO(idn.id << " [" << mc.label << "]: computed "
                  << rat_to_string(mc.computed) << ", tabled "
                  << rat_to_string(mc.tabled));
      CHECK(mc.ok);
      ++checked;
    }
  }
  CHECK(checked >= 20);

  auto spot = reg.modular_cross_check(reg.find("thm1-2"));
  REQUIRE(spot.size() == 1);
  CHECK(spot[0].computed == Rat(1, 8));

  // Identities outside the eta-quotient algebra are excluded wholesale.
  CHECK(reg.modular_cross_check(reg.find("euler1")).empty());
  CHECK(reg.modular_cross_check(reg.find("thm1-1")).empty());
}

TEST_CASE("right-side mutations are detected") {
  Registry reg = Registry::embedded();
  Identity copy = reg.find("rr-g");
  const std::string rhs = copy.instances[0].rhs;
  for (int which = 0; which < 3; ++which) {
    copy.instances[0].rhs = mutate_rhs(rhs, which);
    CheckReport rep = reg.check(copy, Rat(20));
    INFO("mutation " << which << " -> " << copy.instances[0].rhs);
    CHECK(rep.result == "mismatch");
    CHECK(rep.firstExponent.has_value());
    CHECK(rep.lhsCoeff.has_value());
    CHECK(rep.rhsCoeff.has_value());
  }
  copy.instances[0].rhs = mutate_rhs(rhs, 0);
  CheckReport rep = reg.check(copy, Rat(20));
  CHECK(rep.firstExponent == Rat(0));  // scalar bump shows up immediately
}

TEST_CASE("deterministic JSON reports") {
  CheckReport r;
  r.id = "x";
  r.status = "proved";
  r.order = Rat(40);
  r.result = "mismatch";
  r.instanceLabel = "b=1/3";
  r.firstExponent = Rat(3, 2);
  r.lhsCoeff = Rat(1);
  r.rhsCoeff = Rat(-2);
  r.elapsedSeconds = 1.25;  // excluded from the serialization
  CHECK(report_to_json(r) ==
        "{\"id\":\"x\",\"status\":\"proved\",\"order\":\"40\","
        "\"result\":\"mismatch\",\"instance\":\"b=1/3\","
        "\"first_exponent\":\"3/2\",\"lhs\":\"1\",\"rhs\":\"-2\"}");

  CheckReport e;
  e.id = "y";
  e.status = "classical";
  e.order = Rat(60);
  e.result = "error";
  e.errorKind = "SyntaxError";
  e.errorMessage = "bad \"thing\"";
  CHECK(report_to_json(e) ==
        "{\"id\":\"y\",\"status\":\"classical\",\"order\":\"60\","
        "\"result\":\"error\",\"error\":\"SyntaxError\","
        "\"message\":\"bad \\\"thing\\\"\"}");

  Registry reg = Registry::embedded();
  CheckReport a = run(reg, "rr-g", 20);
  CheckReport b = run(reg, "rr-g", 20);
  CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("registry JSON validation") {
  const std::string good =
      "[{\"id\":\"t1\",\"status\":\"classical\",\"source\":\"s\","
      "\"kind\":\"nahm\",\"instances\":[{\"lhs\":{\"A\":[[\"2\"]]},"
      "\"rhs\":\"J[1]\"}]}]";
  Registry reg = Registry::from_json_text(good);
  CHECK(reg.identities().size() == 1);
  const Identity& idn = reg.find("t1");
  REQUIRE(idn.instances.size() == 1);
  CHECK(idn.instances[0].triple->A.at(0, 0) == Rat(2));
  CHECK(idn.instances[0].triple->B[0] == Rat(0));      // defaulted
  CHECK(idn.instances[0].nomeScale == Rat(1));          // defaulted
  CheckReport rep = reg.check(idn, Rat(10));
  CHECK(rep.result == "mismatch");  // sum of positive terms vs. eta product

  expect_kind("SyntaxError", [] {
    Registry::from_json_text(
        "[{\"id\":\"a\",\"status\":\"quoted\",\"source\":\"s\","
        "\"kind\":\"nahm\",\"instances\":[{\"lhs\":{\"A\":[[\"2\"]]}}]}]");
  });
  expect_kind("SyntaxError", [] {
    Registry::from_json_text(
        "[{\"id\":\"a\",\"status\":\"classical\",\"source\":\"s\","
        "\"kind\":\"nahm\",\"instances\":[]}]");
  });
  const std::string dup =
      "[{\"id\":\"a\",\"status\":\"classical\",\"source\":\"s\","
      "\"kind\":\"nahm\",\"instances\":[{\"lhs\":{\"A\":[[\"2\"]]}}]},"
      "{\"id\":\"a\",\"status\":\"classical\",\"source\":\"s\","
      "\"kind\":\"nahm\",\"instances\":[{\"lhs\":{\"A\":[[\"2\"]]}}]}]";
  expect_kind("SyntaxError", [&] { Registry::from_json_text(dup); });
  expect_kind("SyntaxError", [] { Registry::from_json_text("{}"); });
  expect_kind("SyntaxError", [] { Registry::from_json_text("not json"); });
}

TEST_CASE("stored tables recompute") {
  TablesData data = tables_embedded();
  CHECK(data.table1.size() == 12);
  CHECK(data.examples.size() == 9);

  auto dets = table_determinants(data);
  CHECK(dets.size() == 36);
  for (const auto& c : dets) {
    INFO(c.cell << ": expected " << c.expected << ", computed " << c.computed);
    CHECK(c.ok);
  }

  Registry reg = Registry::embedded();
  for (const auto& ex : data.examples) {
    auto cells = table_liftdual(data, ex.name, &reg);
    CHECK(cells.size() > ex.columns.size());
    for (const auto& c : cells) {
      INFO(ex.name << " " << c.cell << ": expected " << c.expected
                   << ", computed " << c.computed);
      CHECK(c.ok);
    }
  }

  CHECK(find_example(data, "cw2-L1").liftWhich == 1);
  expect_kind("UnknownExample", [&] { find_example(data, "nope"); });
  expect_kind("UnknownExample", [&] { table_liftdual(data, "nope", &reg); });
}

}  // TEST_SUITE
