#pragma once

#include <array>
#include <string>
#include <vector>

#include "nahmforge/nahm.hpp"
#include "nahmforge/registry.hpp"

namespace nahmforge {

// One row of the determinant table: a rank-3 matrix and the stored
// determinants of its three lifts.
struct Table1Row {
  std::string name;
  RatMatrix A;
  std::array<Rat, 3> detLifts;
};

// One column of a lift/dual example table.  All stored values are the
// printed ones; parametric columns are expanded to concrete samples.
struct ExampleColumn {
  std::string label;
  std::string identity;  // tied registry id, "" when untied
  RatVector B;           // base shift vector
  Rat C{0};              // base constant
  RatVector BLift;       // stored lifted shift vector
  RatVector BDual;       // stored dual shift vector
  Rat CDual{0};          // stored dual constant
};

struct ExampleTable {
  std::string name;
  RatMatrix A;     // rank-3 base matrix
  int liftWhich;   // which lift operator the table applies
  std::vector<std::size_t> perm;  // coordinate relabeling applied after lifting
  RatMatrix ALift;  // stored lifted matrix (after perm)
  RatMatrix ADual;  // stored dual matrix
  std::vector<ExampleColumn> columns;
};

struct TablesData {
  std::vector<Table1Row> table1;
  std::vector<ExampleTable> examples;
};

TablesData tables_embedded();
TablesData tables_from_json_text(const std::string& text);

// One recomputed-vs-stored cell.
struct CellCheck {
  std::string cell;
  std::string expected;
  std::string computed;
  bool ok = false;
};

// Recomputes det(L_i(A)) for every row and i = 1..3: 36 cells.
std::vector<CellCheck> table_determinants(const TablesData& data);

// Recomputes the lift and dual of every column of one example table and
// diffs all matrix/vector/constant entries against the stored data; with a
// registry, also cross-checks tied identities: the registry instance's
// tabled C against the column's dual C, and (for identities whose right side
// is in the J-algebra) modular_constant(rhs)/nomeScale against the same C.
// UnknownExample when the name is not registered.
std::vector<CellCheck> table_liftdual(const TablesData& data,
                                      const std::string& example,
                                      const Registry* registry);

const ExampleTable& find_example(const TablesData& data,
                                 const std::string& name);  // UnknownExample

}  // namespace nahmforge
