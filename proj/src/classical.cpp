#include "qmc/classical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qmc/quantum.hpp"

namespace qmc {

namespace {

using StateSet = std::vector<int>;  // sorted unique state indices

StateSet apply_color(const RoadColoring& rc, const StateSet& set, int color) {
  std::set<int> image;
  for (int s : set) image.insert(rc.gamma[color][s]);
  return StateSet(image.begin(), image.end());
}

// Reachable subsets of the full state set under simultaneous action, plus the
// color transition structure between them.
struct SubsetAutomaton {
  std::vector<StateSet> subsets;            // index 0 = full set
  std::vector<std::vector<int>> next;       // next[subset][color]
};

SubsetAutomaton build_subset_automaton(const RoadColoring& rc) {
  SubsetAutomaton sa;
  std::map<StateSet, int> index;
  StateSet full(rc.num_states());
  for (int s = 0; s < rc.num_states(); ++s) full[s] = s;
  sa.subsets.push_back(full);
  index[full] = 0;
  for (std::size_t i = 0; i < sa.subsets.size(); ++i) {
    std::vector<int> row(rc.num_colors());
    for (int c = 0; c < rc.num_colors(); ++c) {
      StateSet img = apply_color(rc, sa.subsets[i], c);
      auto [it, inserted] = index.try_emplace(img, int(sa.subsets.size()));
      if (inserted) sa.subsets.push_back(img);
      row[c] = it->second;
    }
    sa.next.push_back(std::move(row));
  }
  return sa;
}

}  // namespace

RoadColoring::RoadColoring(std::vector<std::string> states_,
                           std::vector<std::string> colors_,
                           std::vector<std::vector<int>> gamma_,
                           std::vector<double> nu_)
    : states(std::move(states_)),
      colors(std::move(colors_)),
      gamma(std::move(gamma_)),
      nu(std::move(nu_)) {
  if (states.empty() || colors.empty())
    throw DimensionMismatch("automaton needs states and colors");
  if (gamma.size() != colors.size() || nu.size() != colors.size())
    throw DimensionMismatch("gamma and nu must have one entry per color");
  double total = 0.0;
  for (double p : nu) {
    if (p < 0.0) throw Error("color probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw Error("color probabilities must sum to one");
  for (const auto& row : gamma) {
    if (row.size() != states.size())
      throw DimensionMismatch("gamma row must cover every state");
    for (int t : row)
      if (t < 0 || t >= num_states())
        throw DimensionMismatch("gamma target out of range");
  }
}

int RoadColoring::color_index(const std::string& label) const {
  auto it = std::find(colors.begin(), colors.end(), label);
  if (it == colors.end()) throw Error("unknown color label: " + label);
  return static_cast<int>(it - colors.begin());
}

RealMatrix stochastic_matrix(const RoadColoring& rc) {
  RealMatrix t = RealMatrix::Zero(rc.num_states(), rc.num_states());
  for (int c = 0; c < rc.num_colors(); ++c)
    for (int s = 0; s < rc.num_states(); ++s) t(s, rc.gamma[c][s]) += rc.nu[c];
  return t;
}

RoadColoring graph_product(const RoadColoring& rc) {
  const int n = rc.num_states();
  std::vector<std::string> states;
  states.reserve(n * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      states.push_back(rc.states[s] + "," + rc.states[t]);
  std::vector<std::vector<int>> gamma(rc.num_colors(),
                                      std::vector<int>(n * n));
  for (int c = 0; c < rc.num_colors(); ++c)
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        gamma[c][s * n + t] = rc.gamma[c][s] * n + rc.gamma[c][t];
  return RoadColoring(std::move(states), rc.colors, std::move(gamma), rc.nu);
}

bool is_synchronizing_word(const RoadColoring& rc,
                           const std::vector<int>& word) {
  if (word.empty()) throw Error("word must be nonempty");
  StateSet set(rc.num_states());
  for (int s = 0; s < rc.num_states(); ++s) set[s] = s;
  for (int c : word) {
    if (c < 0 || c >= rc.num_colors()) throw Error("unknown color");
    set = apply_color(rc, set, c);
  }
  return set.size() == 1;
}

double nonsync_probability(const RoadColoring& rc, int n) {
  if (n < 0) throw Error("word length must be nonnegative");
  if (rc.num_states() == 1) return 0.0;
  SubsetAutomaton sa = build_subset_automaton(rc);
  std::vector<double> dist(sa.subsets.size(), 0.0);
  dist[0] = 1.0;
  for (int step = 0; step < n; ++step) {
    std::vector<double> next(sa.subsets.size(), 0.0);
    for (std::size_t i = 0; i < sa.subsets.size(); ++i) {
      if (dist[i] == 0.0) continue;
      if (sa.subsets[i].size() == 1) {
        next[i] += dist[i];  // absorbing
        continue;
      }
      for (int c = 0; c < rc.num_colors(); ++c)
        next[sa.next[i][c]] += dist[i] * rc.nu[c];
    }
    dist.swap(next);
  }
  double nonsync = 0.0;
  for (std::size_t i = 0; i < sa.subsets.size(); ++i)
    if (sa.subsets[i].size() > 1) nonsync += dist[i];
  return nonsync;
}

double nonsync_enumeration_oracle(const RoadColoring& rc, int n) {
  if (n < 0) throw Error("word length must be nonnegative");
  double words = std::pow(double(rc.num_colors()), double(n));
  if (words > 1e7) throw HorizonTooLarge("enumeration horizon exceeded");
  if (rc.num_states() == 1) return 0.0;

  double nonsync = 0.0;
  std::vector<int> word(n, 0);
  const long long count = static_cast<long long>(words);
  for (long long w = 0; w < count; ++w) {
    long long code = w;
    double prob = 1.0;
    StateSet set(rc.num_states());
    for (int s = 0; s < rc.num_states(); ++s) set[s] = s;
    for (int pos = 0; pos < n; ++pos) {
      int c = static_cast<int>(code % rc.num_colors());
      code /= rc.num_colors();
      prob *= rc.nu[c];
      set = apply_color(rc, set, c);
    }
    if (set.size() > 1) nonsync += prob;
  }
  return nonsync;
}

bool synchronizable(const RoadColoring& rc) {
  if (rc.num_states() == 1) return true;
  SubsetAutomaton sa = build_subset_automaton(rc);
  for (const auto& subset : sa.subsets)
    if (subset.size() == 1) return true;
  return false;
}

AlternatingSumBound alternating_sum_bound(int n) {
  if (n < 0) throw Error("word length must be nonnegative");
  double sum = 0.0;
  double binom = 1.0;  // C(n, k), updated incrementally
  for (int k = 0; k <= n; ++k) {
    double weight;
    if (k == 0)
      weight = 1.0;
    else if (k % 2 == 0)
      weight = 2.0 * std::pow(1.0 / 18.0, k / 2.0);
    else
      weight = 0.5 * std::pow(1.0 / 18.0, (k - 1) / 2.0);
    sum += binom * std::pow(0.5, double(n - k)) * weight;
    binom = binom * double(n - k) / double(k + 1);
  }
  const double rate = 0.5 + std::sqrt(2.0) / 6.0;
  return AlternatingSumBound{sum, 2.0 * std::pow(rate, double(n))};
}

double classical_mixing_bound(const RoadColoring& rc, int n) {
  const int s = rc.num_states();
  RealMatrix pair_t = stochastic_matrix(graph_product(rc));
  RealMatrix powered = RealMatrix::Identity(s * s, s * s);
  for (int k = 0; k < n; ++k) powered = powered * pair_t;

  double worst = 0.0;
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) {
      double off = 0.0;
      for (int x = 0; x < s; ++x)
        for (int y = 0; y < s; ++y)
          if (x != y) off += powered(a * s + b, x * s + y);
      worst = std::max(worst, off);
    }
  return 2.0 * worst;
}

SyncReport sync_report(const RoadColoring& rc, int n_max) {
  SyncReport rep;
  rep.horizon = n_max;
  for (int n = 0; n <= n_max; ++n)
    rep.exact_nonsync.push_back(nonsync_probability(rc, n));
  rep.rate = subdominant_modulus(stochastic_matrix(rc).cast<Complex>());
  for (int n = 0; n <= n_max; ++n)
    rep.closed_form.push_back(2.0 * std::pow(rep.rate, double(n)));
  rep.synchronizable = qmc::synchronizable(rc);
  return rep;
}

}  // namespace qmc
