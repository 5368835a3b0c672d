#pragma once

#include "coin/classifier.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace coin {

/// 14x14 count table; rows are target classes, columns are the classes the
/// model assigned.
struct ConfusionMatrix {
  Eigen::Matrix<std::int64_t, kClassCount, kClassCount> counts =
      Eigen::Matrix<std::int64_t, kClassCount, kClassCount>::Zero();

  std::int64_t trace() const { return counts.trace(); }
  std::int64_t total() const { return counts.sum(); }
};

/// Denomination-level recognition summary. percent_error complements
/// overall_rate, so overall_rate = 100 - percent_error by construction.
struct Metrics {
  double mse = 0.0;  // filled only by paths that evaluate model outputs
  double percent_error = 0.0;
  std::array<double, 4> denomination_rate{};  // rupee 1, 2, 5, 10
  std::array<std::int64_t, 4> denomination_recognized{};
  std::array<std::int64_t, 4> denomination_total{};
  double overall_rate = 0.0;
};

ConfusionMatrix confusion_matrix(const MlpModel& model, const std::vector<Sample>& samples);

/// A sample counts as recognized when its output class maps to the same
/// denomination as its target class. Throws EmptyDenomination if a
/// denomination has no samples.
Metrics recognition_rates(const ConfusionMatrix& cm);

/// MSE over samples and the 14 outputs, and the argmax misclassification
/// percentage.
std::pair<double, double> mse_and_percent_error(const MlpModel& model,
                                                const std::vector<Sample>& samples);

std::string format_confusion_matrix(const ConfusionMatrix& cm, bool tsv);
std::string format_recognition_report(const Metrics& metrics, bool tsv);

}  // namespace coin
