#include "tweetsense/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "tweetsense/error.hpp"

namespace tweetsense {

TermCollection make_collection(std::map<std::string, std::size_t> term_freq, Label cls) {
  TermCollection c;
  c.cls = cls;
  std::erase_if(term_freq, [](const auto& kv) { return kv.second == 0; });
  c.term_freq = std::move(term_freq);
  c.ranked.reserve(c.term_freq.size());
  for (const auto& [term, _] : c.term_freq) c.ranked.push_back(term);
  // Already lexicographic, so a stable sort on count keeps the tie rule.
  std::stable_sort(c.ranked.begin(), c.ranked.end(), [&c](const auto& a, const auto& b) {
    return c.term_freq.at(a) > c.term_freq.at(b);
  });
  return c;
}

TermCollection rank_frequencies(std::span<const NormalizedTweet> tweets, Label cls) {
  std::map<std::string, std::size_t> freq;
  for (const auto& nt : tweets) {
    for (const auto& t : nt.tokens) ++freq[t.surface];
  }
  return make_collection(std::move(freq), cls);
}

void HarvestConfig::validate() const {
  auto ok = [](double t) { return t > 0.0 && t <= 1.0; };
  if (!ok(threshold1) || !ok(threshold2)) {
    throw InvalidArgument("harvest thresholds must lie in (0, 1]");
  }
}

std::size_t slice_size(double fraction, std::size_t size) {
  const auto n = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(size)));
  return std::min(n, size);
}

std::vector<std::pair<std::string, std::size_t>> harvest_terms(const TermCollection& src,
                                                               const TermCollection& other1,
                                                               const TermCollection& other2,
                                                               const HarvestConfig& cfg) {
  cfg.validate();
  std::unordered_set<std::string> excluded;
  for (const auto* other : {&other1, &other2}) {
    const std::size_t n = slice_size(cfg.threshold2, other->ranked.size());
    excluded.insert(other->ranked.begin(), other->ranked.begin() + static_cast<long>(n));
  }
  std::vector<std::pair<std::string, std::size_t>> out;
  const std::size_t n = slice_size(cfg.threshold1, src.ranked.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& term = src.ranked[i];
    if (!excluded.contains(term)) out.emplace_back(term, src.term_freq.at(term));
  }
  return out;
}

StrengthScore strength_score(const StrengthComponents& c, double R) {
  if (!(R >= 1.0)) throw InvalidArgument("strength calibration R must be >= 1");
  if (c.predicted != Label::positive && c.predicted != Label::negative &&
      c.predicted != Label::neutral) {
    throw InvalidArgument("strength needs a positive, negative or neutral label");
  }
  StrengthScore s;
  s.components = c;
  if (c.predicted == Label::neutral) return s;
  s.raw = c.capitalized + 2 * (c.strong_pos + c.strong_neg) + c.weak_pos + c.weak_neg;
  const long magnitude =
      std::min<long>(5, std::lround(5.0 * static_cast<double>(s.raw) / R));
  s.value = static_cast<int>(c.predicted == Label::positive ? magnitude : -magnitude);
  return s;
}

StrengthScore strength_score(const FeatureVector& fv, Label predicted, double R) {
  if (!fv.mask.has(2) || !fv.mask.has(7)) {
    throw InvalidArgument("strength needs feature families f2 and f7");
  }
  StrengthComponents c;
  c.capitalized = static_cast<std::size_t>(fv.capitalized);
  c.strong_pos = static_cast<std::size_t>(fv.polarity[0]);
  c.strong_neg = static_cast<std::size_t>(fv.polarity[1]);
  c.weak_pos = static_cast<std::size_t>(fv.polarity[2]);
  c.weak_neg = static_cast<std::size_t>(fv.polarity[3]);
  c.predicted = predicted;
  return strength_score(c, R);
}

nlohmann::ordered_json StrengthScore::to_json() const {
  nlohmann::ordered_json j;
  j["value"] = value;
  j["raw"] = raw;
  j["predicted"] = std::string(to_string(components.predicted));
  j["capitalized"] = components.capitalized;
  j["strong_pos"] = components.strong_pos;
  j["strong_neg"] = components.strong_neg;
  j["weak_pos"] = components.weak_pos;
  j["weak_neg"] = components.weak_neg;
  return j;
}

}  // namespace tweetsense
