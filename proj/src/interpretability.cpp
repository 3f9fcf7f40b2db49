#include "gedt/interpretability.hpp"

namespace gedt {

double interpretability_score(int ell, int n_o, int n_nao, int n_naoc)
{
  return 0.2 * ell + 0.5 * n_o + 3.4 * n_nao + 4.5 * n_naoc;
}

InterpretabilityReport metric(const DecisionTree& tree)
{
  const auto c = static_cast<int>(tree.condition_count());
  InterpretabilityReport r;
  if (c == 0) {
    r.ell = 1;
  } else {
    r.ell = 5 * c;
    r.n_o = 2 * c;
    r.n_nao = 2 * c;
    r.n_naoc = 2 * c;
  }
  r.M = interpretability_score(r.ell, r.n_o, r.n_nao, r.n_naoc);
  return r;
}

}  // namespace gedt
