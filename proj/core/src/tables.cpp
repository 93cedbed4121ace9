#include "nahmforge/tables.hpp"

#include <map>
#include <sstream>

#include "json.hpp"

namespace nahmforge {

namespace {

using nlohmann::json;

Rat jrat(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  raise("SyntaxError", "expected rational (string) in " + where);
}

RatVector jvec(const json& j, const std::string& where) {
  RatVector v;
  for (const auto& e : j) v.push_back(jrat(e, where));
  return v;
}

RatMatrix jmat(const json& j, const std::string& where) {
  std::vector<RatVector> rows;
  for (const auto& r : j) rows.push_back(jvec(r, where));
  return RatMatrix(rows);
}

std::string vec_str(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += rat_to_string(v[i]);
  }
  return s + ")";
}

std::string mat_str(const RatMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rank(); ++i) {
    if (i) s += ";";
    s += vec_str(m.entries[i]);
  }
  return s + "]";
}

CellCheck cell(const std::string& name, const std::string& expected,
               const std::string& computed) {
  return CellCheck{name, expected, computed, expected == computed};
}

RatMatrix apply_perm(const RatMatrix& a, const std::vector<std::size_t>& perm) {
  std::vector<RatVector> rows(a.rank(), RatVector(a.rank()));
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j)
      rows[i][j] = a.at(perm[i], perm[j]);
  return RatMatrix(rows);
}

RatVector apply_perm(const RatVector& b, const std::vector<std::size_t>& perm) {
  RatVector out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = b[perm[i]];
  return out;
}

}  // namespace

TablesData tables_embedded() {
  return tables_from_json_text(embedded::kTablesJson);
}

TablesData tables_from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    raise("SyntaxError", std::string("tables JSON: ") + e.what());
  }
  TablesData data;
  for (const auto& j : root.at("table1")) {
    Table1Row row;
    row.name = j.at("name").get<std::string>();
    row.A = jmat(j.at("A"), "table1 " + row.name);
    const auto& d = j.at("det_lifts");
    for (int i = 0; i < 3; ++i)
      row.detLifts[static_cast<std::size_t>(i)] =
          jrat(d.at(i), "det_lifts " + row.name);
    data.table1.push_back(std::move(row));
  }
  for (const auto& j : root.at("examples")) {
    ExampleTable ex;
    ex.name = j.at("name").get<std::string>();
    const std::string where = "example " + ex.name;
    ex.A = jmat(j.at("A"), where);
    ex.liftWhich = j.at("lift").get<int>();
    if (j.contains("perm")) {
      for (const auto& e : j.at("perm"))
        ex.perm.push_back(e.get<std::size_t>());
    } else {
      for (std::size_t i = 0; i < ex.A.rank() + 1; ++i) ex.perm.push_back(i);
    }
    ex.ALift = jmat(j.at("a_lift"), where);
    ex.ADual = jmat(j.at("a_dual"), where);
    for (const auto& c : j.at("columns")) {
      ExampleColumn col;
      col.label = c.at("label").get<std::string>();
      col.identity = c.value("identity", "");
      col.B = jvec(c.at("b"), where);
      col.C = jrat(c.at("c"), where);
      col.BLift = jvec(c.at("b_lift"), where);
      col.BDual = jvec(c.at("b_dual"), where);
      col.CDual = jrat(c.at("c_dual"), where);
      ex.columns.push_back(std::move(col));
    }
    data.examples.push_back(std::move(ex));
  }
  return data;
}

const ExampleTable& find_example(const TablesData& data,
                                 const std::string& name) {
  for (const auto& ex : data.examples)
    if (ex.name == name) return ex;
  raise("UnknownExample", "no example table named '" + name + "'");
}

std::vector<CellCheck> table_determinants(const TablesData& data) {
  std::vector<CellCheck> out;
  for (const auto& row : data.table1) {
    NahmTriple base{row.A, RatVector(row.A.rank(), Rat(0)), Rat(0)};
    for (int i = 1; i <= 3; ++i) {
      Rat det = determinant(lift(i, base).A);
      out.push_back(cell(row.name + ".detL" + std::to_string(i),
                         rat_to_string(row.detLifts[static_cast<std::size_t>(i - 1)]),
                         rat_to_string(det)));
    }
  }
  return out;
}

std::vector<CellCheck> table_liftdual(const TablesData& data,
                                      const std::string& example,
                                      const Registry* registry) {
  const ExampleTable& ex = find_example(data, example);
  std::vector<CellCheck> out;

  NahmTriple base{ex.A, RatVector(ex.A.rank(), Rat(0)), Rat(0)};
  RatMatrix liftA = apply_perm(lift(ex.liftWhich, base).A, ex.perm);
  out.push_back(cell("lift.A", mat_str(ex.ALift), mat_str(liftA)));
  RatMatrix dualA = inverse(liftA);
  out.push_back(cell("dual.A", mat_str(ex.ADual), mat_str(dualA)));

  // Tied identity instances, consumed in column order per id.
  std::map<std::string, std::size_t> nextInstance;

  for (std::size_t ci = 0; ci < ex.columns.size(); ++ci) {
    const ExampleColumn& col = ex.columns[ci];
    const std::string cn = "col" + std::to_string(ci + 1) + "[" + col.label + "]";

    NahmTriple t{ex.A, col.B, col.C};
    NahmTriple lifted = lift(ex.liftWhich, t);
    lifted.B = apply_perm(lifted.B, ex.perm);
    lifted.A = liftA;
    out.push_back(cell(cn + ".lift_B", vec_str(col.BLift), vec_str(lifted.B)));

    NahmTriple dualT = dual(lifted);
    out.push_back(cell(cn + ".dual_B", vec_str(col.BDual), vec_str(dualT.B)));
    out.push_back(cell(cn + ".dual_C", rat_to_string(col.CDual),
                       rat_to_string(dualT.C)));

    if (registry != nullptr && !col.identity.empty()) {
      const Identity& idn = registry->find(col.identity);
      std::size_t k = nextInstance[col.identity]++;
      if (k >= idn.instances.size()) {
        out.push_back(CellCheck{cn + ".registry_C", "instance #" +
                                    std::to_string(k + 1) + " of " +
                                    col.identity,
                                "missing", false});
        continue;
      }
      const RegInstance& ins = idn.instances[k];
      out.push_back(cell(cn + ".registry_C", rat_to_string(col.CDual),
                         ins.tableC ? rat_to_string(*ins.tableC) : "absent"));
      if (idn.modularCheck && !ins.rhs.empty()) {
        ModularData md =
            modular_constant(parse_product(ins.rhs), ins.nomeScale);
        out.push_back(cell(cn + ".modular_C", rat_to_string(col.CDual),
                           rat_to_string(md.constantC)));
      }
    }
  }
  return out;
}

}  // namespace nahmforge
