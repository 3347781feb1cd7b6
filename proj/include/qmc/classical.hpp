#pragma once

#include <string>
#include <vector>

#include "qmc/tensor.hpp"

// Road-colored deterministic automata, the stochastic matrices they induce,
// and synchronizing-word analysis for classical coupling bounds.

namespace qmc {

struct RoadColoring {
  std::vector<std::string> states;
  std::vector<std::string> colors;
  // gamma[color][state] -> state index
  std::vector<std::vector<int>> gamma;
  // probability per color
  std::vector<double> nu;

  RoadColoring(std::vector<std::string> states, std::vector<std::string> colors,
               std::vector<std::vector<int>> gamma, std::vector<double> nu);

  int num_states() const { return static_cast<int>(states.size()); }
  int num_colors() const { return static_cast<int>(colors.size()); }
  int color_index(const std::string& label) const;
};

// T[s][s'] = sum of nu(c) over colors with gamma(s, c) = s'.
RealMatrix stochastic_matrix(const RoadColoring& rc);

// Pair automaton on S x S running both copies on the same colors.
RoadColoring graph_product(const RoadColoring& rc);

// True iff every start state reaches one common end state under the word.
bool is_synchronizing_word(const RoadColoring& rc,
                           const std::vector<int>& word);

// Probability that an iid word of length n does NOT synchronize, exact via
// the subset-construction transfer matrix over reachable subsets.
double nonsync_probability(const RoadColoring& rc, int n);

// Exhaustive enumeration over all |C|^n words; independent oracle.
double nonsync_enumeration_oracle(const RoadColoring& rc, int n);

// Some word synchronizes; via subset-automaton reachability.
bool synchronizable(const RoadColoring& rc);

struct AlternatingSumBound {
  double binomial_sum;  // exact non-sync probability of the 3-state model
  double closed_form;   // 2 (1/2 + sqrt(2)/6)^n
};

// Closed-form count of words that stay alternating in the two moving colors
// after removing the lazy color; specific to the bundled 3-state model.
AlternatingSumBound alternating_sum_bound(int n);

// 2 * max over start pairs of P(pair chain off-diagonal after n steps).
double classical_mixing_bound(const RoadColoring& rc, int n);

struct SyncReport {
  int horizon;
  std::vector<double> exact_nonsync;  // index n = 0..horizon
  std::vector<double> closed_form;    // 2 * rate^n
  double rate;                        // subdominant modulus of T
  bool synchronizable;
};

SyncReport sync_report(const RoadColoring& rc, int n_max);

}  // namespace qmc
