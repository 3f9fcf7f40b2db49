#pragma once

#include "gedt/tree.hpp"

namespace gedt {

struct InterpretabilityReport {
  int ell = 0;      ///< symbols
  int n_o = 0;      ///< operations
  int n_nao = 0;    ///< non-arithmetic operations
  int n_naoc = 0;   ///< consecutive non-arithmetic compositions
  double M = 0.0;

  bool operator==(const InterpretabilityReport&) const = default;
};

/// 0.2*ell + 0.5*n_o + 3.4*n_nao + 4.5*n_naoc
double interpretability_score(int ell, int n_o, int n_nao, int n_naoc);

/// Each condition counts as 5 symbols (if, var, comparator, constant, else)
/// and 2 non-arithmetic operations (branch, comparison) composed twice, so
/// M = 17.8 per condition. A bare leaf is a single symbol.
InterpretabilityReport metric(const DecisionTree& tree);

}  // namespace gedt
