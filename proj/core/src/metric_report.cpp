#include "editscore/metric_report.hpp"

#include <vector>

namespace editscore {

MetricCell metric_cell(std::span<const double> pred, std::span<const double> human,
                       const MetricOptions& options) {
  MetricCell cell;
  cell.n = pred.size();
  if (cell.n < 3) {
    cell.note = "fewer than 3 scored samples";
    return cell;
  }
  try {
    cell.srcc = srcc(pred, human, options.srcc_mode);
    cell.krcc = krcc_tau_b(pred, human);
  } catch (const Error& e) {
    cell.srcc.reset();
    cell.krcc.reset();
    cell.note = e.detail();
    return cell;
  }
  if (cell.n < 5) {
    cell.note = "fewer than 5 samples for calibration";
    return cell;
  }
  try {
    const PlccRmse pr = plcc_rmse(pred, human, options.fit);
    cell.plcc = pr.plcc;
    cell.rmse = pr.rmse;
    cell.fit = pr.fit.params;
    cell.affine = pr.fit.affine;
    cell.fit_status = std::string(to_string(pr.fit.status));
  } catch (const Error& e) {
    cell.note = e.detail();
  }
  return cell;
}

MetricReport metric_report(const EvalTable& table, std::string_view judge_id,
                           const MetricOptions& options) {
  MetricReport report;
  report.judge_id = std::string(judge_id);
  PerColumn<std::vector<double>> pred, human;
  const auto& samples = table.samples();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const PredictionRecord* p = table.prediction(i, judge_id);
    if (p == nullptr) continue;
    const auto& labels = samples[i].labels;
    for (Dimension d : kDimensions) {
      if (auto v = p->dimension(d)) {
        pred[index(d)].push_back(*v);
        human[index(d)].push_back(labels[d].value());
      }
    }
    pred[index(Column::kOverall)].push_back(p->overall_prediction());
    human[index(Column::kOverall)].push_back(overall_human(labels).value());
  }
  for (Column c : kColumns) {
    report.cells[index(c)] = metric_cell(pred[index(c)], human[index(c)], options);
  }
  return report;
}

}  // namespace editscore
