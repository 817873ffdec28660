#include "tweetsense/metrics.hpp"

#include <iomanip>
#include <sstream>

#include "tweetsense/error.hpp"

namespace tweetsense {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

}  // namespace

std::size_t EvalReport::total() const {
  std::size_t n = 0;
  for (const auto& row : confusion) {
    for (std::size_t v : row) n += v;
  }
  return n;
}

EvalReport report_from_confusion(std::vector<std::string> classes,
                                 std::vector<std::vector<std::size_t>> confusion) {
  const std::size_t k = classes.size();
  if (confusion.size() != k) throw InvalidArgument("confusion matrix must be KxK");
  for (const auto& row : confusion) {
    if (row.size() != k) throw InvalidArgument("confusion matrix must be KxK");
  }

  EvalReport r;
  r.classes = std::move(classes);
  r.confusion = std::move(confusion);
  r.per_class.resize(k);

  std::size_t total = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t predicted = 0;
    std::size_t support = 0;
    for (std::size_t o = 0; o < k; ++o) {
      predicted += r.confusion[o][c];
      support += r.confusion[c][o];
    }
    const std::size_t tp = r.confusion[c][c];
    auto& m = r.per_class[c];
    m.support = support;
    m.no_predictions = predicted == 0;
    m.precision = ratio(tp, predicted);
    m.recall = ratio(tp, support);
    m.f1 = harmonic(m.precision, m.recall);
    total += support;
  }

  for (const auto& m : r.per_class) {
    const double w = ratio(m.support, total);
    r.weighted.precision += w * m.precision;
    r.weighted.recall += w * m.recall;
    r.weighted.f1 += w * m.f1;
    r.macro.precision += m.precision;
    r.macro.recall += m.recall;
    r.macro.f1 += m.f1;
  }
  if (k > 0) {
    r.macro.precision /= static_cast<double>(k);
    r.macro.recall /= static_cast<double>(k);
    r.macro.f1 /= static_cast<double>(k);
  }
  return r;
}

EvalReport evaluate(std::span<const int> preds, std::span<const int> gold,
                    std::vector<std::string> classes) {
  if (preds.size() != gold.size()) throw LengthMismatch(preds.size(), gold.size());
  const std::size_t k = classes.size();
  std::vector<std::vector<std::size_t>> confusion(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] < 0 || gold[i] < 0 || static_cast<std::size_t>(preds[i]) >= k ||
        static_cast<std::size_t>(gold[i]) >= k) {
      throw InvalidArgument("label index out of range at position " + std::to_string(i));
    }
    ++confusion[static_cast<std::size_t>(gold[i])][static_cast<std::size_t>(preds[i])];
  }
  return report_from_confusion(std::move(classes), std::move(confusion));
}

EvalReport evaluate(std::span<const Label> preds, std::span<const Label> gold) {
  if (preds.size() != gold.size()) throw LengthMismatch(preds.size(), gold.size());
  auto to_index = [](Label l) {
    const int idx = class_index(l);
    if (idx < 0) {
      throw InvalidArgument("cannot evaluate label '" + std::string(to_string(l)) + "'");
    }
    return idx;
  };
  std::vector<int> p;
  std::vector<int> g;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    p.push_back(to_index(preds[i]));
    g.push_back(to_index(gold[i]));
  }
  return evaluate(p, g, sentiment_class_names());
}

nlohmann::ordered_json EvalReport::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& m = per_class[c];
    per[classes[c]] = {{"precision", m.precision},
                       {"recall", m.recall},
                       {"f1", m.f1},
                       {"support", m.support},
                       {"no_predictions", m.no_predictions}};
  }
  j["per_class"] = per;
  j["weighted_avg"] = {
      {"precision", weighted.precision}, {"recall", weighted.recall}, {"f1", weighted.f1}};
  j["macro_avg"] = {{"precision", macro.precision}, {"recall", macro.recall}, {"f1", macro.f1}};
  j["classes"] = classes;
  j["confusion"] = confusion;
  return j;
}

std::string EvalReport::to_table(bool with_macro) const {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << std::left << std::setw(12) << "" << std::right << std::setw(10) << "precision"
     << std::setw(10) << "recall" << std::setw(10) << "f1-score" << std::setw(10) << "support"
     << '\n';
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& m = per_class[c];
    os << std::left << std::setw(12) << classes[c] << std::right << std::setw(10) << m.precision
       << std::setw(10) << m.recall << std::setw(10) << m.f1 << std::setw(10) << m.support;
    if (m.no_predictions) os << "  (never predicted)";
    os << '\n';
  }
  os << std::left << std::setw(12) << "avg/total" << std::right << std::setw(10)
     << weighted.precision << std::setw(10) << weighted.recall << std::setw(10) << weighted.f1
     << std::setw(10) << total() << '\n';
  if (with_macro) {
    os << std::left << std::setw(12) << "macro avg" << std::right << std::setw(10)
       << macro.precision << std::setw(10) << macro.recall << std::setw(10) << macro.f1
       << std::setw(10) << total() << '\n';
  }
  return os.str();
}

}  // namespace tweetsense
