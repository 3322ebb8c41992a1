#pragma once

// Independent reference computations used by the unit tests and the
// acceptance suite. Nothing here calls into the library's numeric code.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Brute-force TF-IDF: raw count * (ln((1+N)/(1+df)) + 1), optional L2.
inline std::vector<std::map<std::string, double>> tfidf(const std::vector<std::vector<std::string>>& docs,
                                                        bool l2 = true) {
  const double n = static_cast<double>(docs.size());
  std::map<std::string, double> df;
  for (const auto& d : docs) {
    std::set<std::string> seen(d.begin(), d.end());
    for (const auto& t : seen) df[t] += 1.0;
  }
  std::vector<std::map<std::string, double>> out;
  for (const auto& d : docs) {
    std::map<std::string, double> v;
    for (const auto& t : d) v[t] += 1.0;
    double norm = 0.0;
    for (auto& [t, w] : v) {
      w *= std::log((1.0 + n) / (1.0 + df[t])) + 1.0;
      norm += w * w;
    }
    if (l2 && norm > 0.0) {
      for (auto& [t, w] : v) w /= std::sqrt(norm);
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline double gini(const std::vector<double>& counts) {
  double n = 0.0;
  for (double c : counts) n += c;
  if (n == 0.0) return 0.0;
  double g = 1.0;
  for (double c : counts) g -= (c / n) * (c / n);
  return g;
}

inline double entropy(const std::vector<double>& counts) {
  double n = 0.0;
  for (double c : counts) n += c;
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) h -= c / n * std::log(c / n) / std::log(2.0);
  }
  return h;
}

// Score of partitioning rows with labels y by mask (true = left).
inline double partition_score(const std::vector<int>& y, const std::vector<bool>& left_mask, int n_classes,
                              bool gain_ratio) {
  std::vector<double> l(n_classes, 0.0), r(n_classes, 0.0), p(n_classes, 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    (left_mask[i] ? l : r)[y[i]] += 1.0;
    p[y[i]] += 1.0;
  }
  double nl = 0, nr = 0;
  for (int c = 0; c < n_classes; ++c) {
    nl += l[c];
    nr += r[c];
  }
  const double n = nl + nr;
  if (!gain_ratio) return gini(p) - nl / n * gini(l) - nr / n * gini(r);
  const double gain = entropy(p) - nl / n * entropy(l) - nr / n * entropy(r);
  const double si = -(nl / n * std::log2(nl / n) + nr / n * std::log2(nr / n));
  return gain / std::max(si, 1e-12);
}

struct BestSplit {
  bool found = false;
  double score = -std::numeric_limits<double>::infinity();
};

// Every threshold between consecutive distinct values of every feature.
inline BestSplit exhaustive_split(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                                  int n_classes, bool gain_ratio) {
  BestSplit best;
  if (X.empty()) return best;
  for (std::size_t f = 0; f < X[0].size(); ++f) {
    std::set<double> values;
    for (const auto& row : X) values.insert(row[f]);
    for (auto it = values.begin(); std::next(it) != values.end(); ++it) {
      std::vector<bool> mask(X.size());
      for (std::size_t i = 0; i < X.size(); ++i) mask[i] = X[i][f] <= *it;
      const double s = partition_score(y, mask, n_classes, gain_ratio);
      if (!best.found || s > best.score) best = {true, s};
    }
  }
  return best;
}

// Weighted ridge with unpenalized intercept via the augmented normal equations.
struct Ridge {
  std::vector<double> coef;
  double intercept = 0.0;
};

inline Ridge normal_equations(const std::vector<double>& X, std::size_t n, std::size_t d, const std::vector<double>& y,
                              const std::vector<double>& w, double alpha) {
  Eigen::MatrixXd A(n, d + 1);
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) A(i, j) = X[i * d + j];
    A(i, d) = 1.0;
    b(i) = y[i];
  }
  const Eigen::MatrixXd W = Eigen::VectorXd::Map(w.data(), n).asDiagonal();
  Eigen::MatrixXd M = A.transpose() * W * A;
  for (std::size_t j = 0; j < d; ++j) M(j, j) += alpha;
  const Eigen::VectorXd theta = M.ldlt().solve(A.transpose() * W * b);
  Ridge r;
  for (std::size_t j = 0; j < d; ++j) r.coef.push_back(theta(j));
  r.intercept = theta(d);
  return r;
}

// AUC as the Mann-Whitney statistic with ties counted half.
inline double mann_whitney_auc(const std::vector<int>& y, const std::vector<double>& s) {
  double pairs = 0.0, wins = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 1) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] != 0) continue;
      pairs += 1.0;
      wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return wins / pairs;
}

}  // namespace oracle
