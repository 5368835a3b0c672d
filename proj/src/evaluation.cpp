#include "coin/evaluation.hpp"

#include "coin/errors.hpp"

#include <iomanip>
#include <sstream>

namespace coin {

namespace {

int denomination_index(int class_index) {
  switch (denomination_of(class_index)) {
    case Denomination::rupee1: return 0;
    case Denomination::rupee2: return 1;
    case Denomination::rupee5: return 2;
    default: return 3;
  }
}

const char* kDenominationNames[4] = {"₹1", "₹2", "₹5", "₹10"};

}  // namespace

ConfusionMatrix confusion_matrix(const MlpModel& model, const std::vector<Sample>& samples) {
  if (samples.empty()) throw EmptyDataset("confusion_matrix: no samples");
  ConfusionMatrix cm;
  for (const Sample& sample : samples) {
    const Classification result = classify(model, sample.features);
    ++cm.counts(sample.label, result.label);
  }
  return cm;
}

Metrics recognition_rates(const ConfusionMatrix& cm) {
  Metrics metrics;
  for (int t = 0; t < kClassCount; ++t) {
    const int dt = denomination_index(t);
    for (int o = 0; o < kClassCount; ++o) {
      const std::int64_t count = cm.counts(t, o);
      metrics.denomination_total[dt] += count;
      if (denomination_index(o) == dt) metrics.denomination_recognized[dt] += count;
    }
  }
  std::int64_t recognized = 0, total = 0;
  for (int d = 0; d < 4; ++d) {
    if (metrics.denomination_total[d] == 0) {
      throw EmptyDenomination(std::string("recognition_rates: no samples of ") +
                              kDenominationNames[d]);
    }
    metrics.denomination_rate[d] = 100.0 * static_cast<double>(metrics.denomination_recognized[d]) /
                                   static_cast<double>(metrics.denomination_total[d]);
    recognized += metrics.denomination_recognized[d];
    total += metrics.denomination_total[d];
  }
  metrics.overall_rate = 100.0 * static_cast<double>(recognized) / static_cast<double>(total);
  metrics.percent_error = 100.0 - metrics.overall_rate;
  return metrics;
}

std::pair<double, double> mse_and_percent_error(const MlpModel& model,
                                                const std::vector<Sample>& samples) {
  if (samples.empty()) throw EmptyDataset("mse_and_percent_error: no samples");
  double squared_sum = 0.0;
  std::int64_t misclassified = 0;
  for (const Sample& sample : samples) {
    const Eigen::VectorXd out = forward(model, sample.features);
    squared_sum += (one_hot(sample.label) - out).squaredNorm();
    const Classification result = classify(model, sample.features);
    if (result.label != sample.label) ++misclassified;
  }
  const double n = static_cast<double>(samples.size());
  const double mse = squared_sum / (n * static_cast<double>(kClassCount));
  const double percent_error = 100.0 * static_cast<double>(misclassified) / n;
  return {mse, percent_error};
}

std::string format_confusion_matrix(const ConfusionMatrix& cm, bool tsv) {
  std::ostringstream out;
  if (tsv) {
    out << "target\\output";
    for (int o = 0; o < kClassCount; ++o) out << '\t' << o;
    out << '\n';
    for (int t = 0; t < kClassCount; ++t) {
      out << t;
      for (int o = 0; o < kClassCount; ++o) out << '\t' << cm.counts(t, o);
      out << '\n';
    }
    return out.str();
  }
  out << "confusion matrix (rows: target class, columns: output class)\n     ";
  for (int o = 0; o < kClassCount; ++o) out << std::setw(5) << o;
  out << '\n';
  for (int t = 0; t < kClassCount; ++t) {
    out << std::setw(5) << t;
    for (int o = 0; o < kClassCount; ++o) out << std::setw(5) << cm.counts(t, o);
    out << '\n';
  }
  return out.str();
}

std::string format_recognition_report(const Metrics& metrics, bool tsv) {
  std::ostringstream out;
  out << std::setprecision(6);
  if (tsv) {
    out << "denomination\trecognized\ttotal\trate_percent\n";
    for (int d = 0; d < 4; ++d) {
      out << rupee_value(static_cast<Denomination>(d)) << '\t'
          << metrics.denomination_recognized[d] << '\t' << metrics.denomination_total[d] << '\t'
          << metrics.denomination_rate[d] << '\n';
    }
    std::int64_t recognized = 0, total = 0;
    for (int d = 0; d < 4; ++d) {
      recognized += metrics.denomination_recognized[d];
      total += metrics.denomination_total[d];
    }
    out << "total\t" << recognized << '\t' << total << '\t' << metrics.overall_rate << '\n';
    return out.str();
  }
  out << "denomination  recognized/total  rate\n";
  for (int d = 0; d < 4; ++d) {
    out << std::left << std::setw(14) << kDenominationNames[d] << std::right
        << metrics.denomination_recognized[d] << '/' << metrics.denomination_total[d] << "  "
        << metrics.denomination_rate[d] << "%\n";
  }
  std::int64_t recognized = 0, total = 0;
  for (int d = 0; d < 4; ++d) {
    recognized += metrics.denomination_recognized[d];
    total += metrics.denomination_total[d];
  }
  out << std::left << std::setw(14) << "overall" << std::right << recognized << '/' << total
      << "  " << metrics.overall_rate << "%\n";
  return out.str();
}

}  // namespace coin
