#include "kseg/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <tuple>

#include "kseg/errors.h"
#include "kseg/text.h"

namespace kseg {

double PrfReport::precision() const {
  return retrieved ? static_cast<double>(matched) / retrieved : 0.0;
}

double PrfReport::recall() const {
  return relevant ? static_cast<double>(matched) / relevant : 0.0;
}

double PrfReport::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
}

PrfReport& PrfReport::operator+=(const PrfReport& other) {
  relevant += other.relevant;
  retrieved += other.retrieved;
  matched += other.matched;
  return *this;
}

namespace {

using Segment = std::tuple<std::size_t, std::size_t, std::size_t, std::string>;

std::vector<Segment> Segments(const SegmentedSentence& s) {
  std::vector<Segment> out;
  std::size_t offset = 0;
  std::optional<std::size_t> eojeol;
  for (const auto& token : s.tokens) {
    if (eojeol != token.eojeol_index) {
      eojeol = token.eojeol_index;
      offset = 0;
    }
    const std::size_t length = code_point_count(token.form);
    out.emplace_back(token.eojeol_index, offset, offset + length, token.form);
    offset += length;
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <typename T>
std::size_t MultisetIntersection(std::vector<T> a, std::vector<T> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

void CollectConstituents(const SyntaxTree& node, const BracketConfig& config, bool is_root,
                         std::size_t& position, std::vector<Constituent>& out) {
  if (node.is_leaf()) {
    ++position;
    return;
  }
  if (node.is_preterminal()) {
    ++position;
    return;
  }
  const std::size_t begin = position;
  for (const auto& child : node.children) {
    CollectConstituents(child, config, false, position, out);
  }
  if (is_root && !config.include_root) return;
  std::string label;
  if (config.labeled) {
    label = config.strip_functional_tags ? phrase_category(node.label) : node.label;
  }
  out.push_back({std::move(label), begin, position});
}

}  // namespace

PrfReport segmentation_prf(const std::vector<SegmentedSentence>& gold,
                           const std::vector<SegmentedSentence>& pred) {
  if (gold.size() != pred.size()) {
    throw AlignmentError("sentence counts differ: " + std::to_string(gold.size()) + " vs " +
                         std::to_string(pred.size()));
  }
  PrfReport report;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const auto& g = gold[s].source.eojeols;
    const auto& p = pred[s].source.eojeols;
    if (g.size() != p.size()) {
      throw AlignmentError("sentence " + std::to_string(s + 1) + ": eojeol counts differ");
    }
    for (std::size_t e = 0; e < g.size(); ++e) {
      if (g[e].surface != p[e].surface) {
        throw AlignmentError("sentence " + std::to_string(s + 1) + ": eojeol '" +
                             g[e].surface + "' vs '" + p[e].surface + "'");
      }
    }
    const auto gold_segments = Segments(gold[s]);
    const auto pred_segments = Segments(pred[s]);
    report.relevant += gold_segments.size();
    report.retrieved += pred_segments.size();
    report.matched += MultisetIntersection(gold_segments, pred_segments);
  }
  return report;
}

Accuracy pos_accuracy(const std::vector<Sentence>& gold,
                      const std::vector<std::vector<MergedEojeol>>& pred) {
  if (gold.size() != pred.size()) {
    throw AlignmentError("sentence counts differ: " + std::to_string(gold.size()) + " vs " +
                         std::to_string(pred.size()));
  }
  Accuracy acc;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const auto expected = level1_analyses(gold[s]);
    if (expected.size() != pred[s].size()) {
      throw AlignmentError("sentence " + std::to_string(s + 1) + ": eojeol counts differ");
    }
    for (std::size_t e = 0; e < expected.size(); ++e) {
      ++acc.total;
      if (expected[e].analysis == pred[s][e].analysis) ++acc.correct;
    }
  }
  return acc;
}

std::vector<Constituent> constituents(const SyntaxTree& tree, const BracketConfig& config) {
  std::vector<Constituent> out;
  std::size_t position = 0;
  CollectConstituents(tree, config, true, position, out);
  return out;
}

BracketReport bracket_prf(const std::vector<SyntaxTree>& gold,
                          const std::vector<SyntaxTree>& pred, const BracketConfig& config) {
  if (gold.size() != pred.size()) {
    throw AlignmentError("tree counts differ: " + std::to_string(gold.size()) + " vs " +
                         std::to_string(pred.size()));
  }
  BracketReport report;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++report.sentences;
    if (leaf_count(gold[i]) != leaf_count(pred[i])) {
      ++report.error_sentences;
      continue;
    }
    const auto g = constituents(gold[i], config);
    const auto p = constituents(pred[i], config);
    report.prf.relevant += g.size();
    report.prf.retrieved += p.size();
    report.prf.matched += MultisetIntersection(g, p);
  }
  return report;
}

double bleu(const std::vector<std::string>& references,
            const std::vector<std::string>& hypotheses, int max_n) {
  if (references.size() != hypotheses.size()) {
    throw AlignmentError("line counts differ: " + std::to_string(references.size()) +
                         " references vs " + std::to_string(hypotheses.size()) +
                         " hypotheses");
  }
  if (references.empty()) throw Error("empty corpus");
  if (max_n < 1) throw DomainError("max_n must be positive");

  std::vector<std::size_t> matches(max_n, 0);
  std::vector<std::size_t> totals(max_n, 0);
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;

  using Gram = std::vector<std::string_view>;
  for (std::size_t line = 0; line < references.size(); ++line) {
    const auto ref = split_whitespace(references[line]);
    const auto hyp = split_whitespace(hypotheses[line]);
    ref_length += ref.size();
    hyp_length += hyp.size();
    for (int n = 1; n <= max_n; ++n) {
      const auto un = static_cast<std::size_t>(n);
      std::map<Gram, std::size_t> ref_counts;
      for (std::size_t i = 0; i + un <= ref.size(); ++i) {
        ++ref_counts[Gram(ref.begin() + i, ref.begin() + i + un)];
      }
      std::map<Gram, std::size_t> hyp_counts;
      for (std::size_t i = 0; i + un <= hyp.size(); ++i) {
        ++hyp_counts[Gram(hyp.begin() + i, hyp.begin() + i + un)];
      }
      for (const auto& [gram, count] : hyp_counts) {
        totals[n - 1] += count;
        const auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) matches[n - 1] += std::min(count, it->second);
      }
    }
  }

  double log_sum = 0.0;
  for (int n = 0; n < max_n; ++n) {
    if (matches[n] == 0 || totals[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matches[n]) / static_cast<double>(totals[n]));
  }
  const double brevity =
      hyp_length < ref_length
          ? std::exp(1.0 - static_cast<double>(ref_length) / static_cast<double>(hyp_length))
          : 1.0;
  return 100.0 * brevity * std::exp(log_sum / max_n);
}

StatsRow corpus_stats(const std::vector<Sentence>& corpus, Level level,
                      const SegmentOptions& options) {
  if (corpus.empty()) throw Error("empty corpus");
  StatsRow row;
  row.level = level;
  std::set<std::string> labels;
  for (const auto& sentence : corpus) {
    const SegmentedSentence s = segment_sentence(sentence, level, options);
    for (const auto& token : s.tokens) {
      ++row.token_count;
      if (token.range.size() >= 2) ++row.complex_tokens;
      labels.insert(token.composite_tag);
    }
  }
  row.immediate_nt_count = labels.size();
  return row;
}

StatsRow corpus_stats(const std::vector<SyntaxTree>& trees, Level level) {
  if (trees.empty()) throw Error("empty corpus");
  StatsRow row;
  row.level = level;
  std::set<std::string> labels;
  for (const auto& tree : trees) {
    for (const auto& label : preterminal_labels(convert_tree(tree, level))) {
      ++row.token_count;
      if (label.find('+') != std::string::npos) ++row.complex_tokens;
      labels.insert(label);
    }
  }
  row.immediate_nt_count = labels.size();
  return row;
}

std::string with_thousands(std::size_t value) {
  std::string digits = std::to_string(value);
  std::string out;
  const std::size_t lead = digits.size() % 3;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && i >= lead && (i - lead) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

namespace {

std::string Cell(const std::string& text, std::size_t width) {
  return text.size() >= width ? text : std::string(width - text.size(), ' ') + text;
}

std::string Fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

}  // namespace

std::string format_stats_table(const std::vector<StatsRow>& rows) {
  constexpr std::size_t kHead = 14;
  constexpr std::size_t kCol = 11;
  std::string out = std::string(kHead, ' ');
  for (const auto& r : rows) out += Cell("Level " + std::to_string(r.level.value()), kCol);
  out += "\n";
  auto line = [&](const std::string& name, auto value_of) {
    std::string l = name + std::string(kHead - name.size(), ' ');
    for (const auto& r : rows) l += Cell(value_of(r), kCol);
    out += l + "\n";
  };
  line("Token", [](const StatsRow& r) { return with_thousands(r.token_count); });
  line("MCW", [](const StatsRow& r) {
    return r.complex_tokens == 0 ? std::string("0") : Fixed(r.mcw_ratio(), 4);
  });
  line("Immediate NT", [](const StatsRow& r) { return with_thousands(r.immediate_nt_count); });
  return out;
}

std::string format_stats_kv(const std::vector<StatsRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    const std::string p = "level" + std::to_string(r.level.value()) + ".";
    out += p + "tokens=" + std::to_string(r.token_count) + "\n";
    out += p + "complex_tokens=" + std::to_string(r.complex_tokens) + "\n";
    out += p + "mcw=" + Fixed(r.mcw_ratio(), 6) + "\n";
    out += p + "immediate_nt=" + std::to_string(r.immediate_nt_count) + "\n";
  }
  return out;
}

std::string format_prf_kv(const std::string& prefix, const PrfReport& report) {
  std::string out;
  out += prefix + "relevant=" + std::to_string(report.relevant) + "\n";
  out += prefix + "retrieved=" + std::to_string(report.retrieved) + "\n";
  out += prefix + "matched=" + std::to_string(report.matched) + "\n";
  out += prefix + "precision=" + Fixed(100.0 * report.precision(), 2) + "\n";
  out += prefix + "recall=" + Fixed(100.0 * report.recall(), 2) + "\n";
  out += prefix + "f1=" + Fixed(100.0 * report.f1(), 2) + "\n";
  return out;
}

}  // namespace kseg
