#pragma once

#include <functional>
#include <vector>

#include "sqlh/amplitude_query.hpp"

namespace sqlh {

// Dual-query Hermitian operator: an entry query (x,y) -> value and a
// row-support query x -> exact list of columns with nonzero entries.
struct SparseHam {
  int n = 0;
  std::function<ExactValue(const BitString&, const BitString&)> entry;
  std::function<std::vector<BitString>(const BitString&)> rows;
  std::optional<int> locality;
  bool real = false;  // advertised: all entries real
};

}  // namespace sqlh
