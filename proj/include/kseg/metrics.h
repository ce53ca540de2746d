#ifndef KSEG_METRICS_H_
#define KSEG_METRICS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "kseg/core_model.h"
#include "kseg/granularity.h"

namespace kseg {

// Precision/recall/F1 from matched, retrieved (predicted) and relevant (gold)
// counts. Ratios with a zero denominator are 0.
struct PrfReport {
  std::size_t relevant = 0;
  std::size_t retrieved = 0;
  std::size_t matched = 0;

  double precision() const;
  double recall() const;
  double f1() const;

  PrfReport& operator+=(const PrfReport& other);
  friend bool operator==(const PrfReport&, const PrfReport&) = default;
};

struct Accuracy {
  std::size_t correct = 0;
  std::size_t total = 0;

  double value() const { return total ? static_cast<double>(correct) / total : 0.0; }
  friend bool operator==(const Accuracy&, const Accuracy&) = default;
};

// Word segmentation P/R/F1. Segments are identified by sentence, eojeol and
// code-point span within the eojeol's rendered token stream, plus form.
PrfReport segmentation_prf(const std::vector<SegmentedSentence>& gold,
                           const std::vector<SegmentedSentence>& pred);

// Eojeol-level exact-match POS accuracy over merged level-1 analyses.
Accuracy pos_accuracy(const std::vector<Sentence>& gold,
                      const std::vector<std::vector<MergedEojeol>>& pred);

struct BracketConfig {
  bool labeled = true;
  bool include_root = true;
  bool strip_functional_tags = false;
};

struct BracketReport {
  PrfReport prf;
  std::size_t sentences = 0;
  std::size_t error_sentences = 0;  // leaf-count mismatches, excluded
};

// EVALB-style bracket scoring over non-preterminal phrases.
BracketReport bracket_prf(const std::vector<SyntaxTree>& gold,
                          const std::vector<SyntaxTree>& pred,
                          const BracketConfig& config = {});

struct Constituent {
  std::string label;
  std::size_t begin = 0;
  std::size_t end = 0;
  friend auto operator<=>(const Constituent&, const Constituent&) = default;
};

std::vector<Constituent> constituents(const SyntaxTree& tree, const BracketConfig& config);

// Corpus BLEU in [0, 100] with multi-bleu conventions: pooled clipped n-gram
// counts, uniform weights, brevity penalty, no smoothing.
double bleu(const std::vector<std::string>& references,
            const std::vector<std::string>& hypotheses, int max_n = 4);

struct StatsRow {
  Level level{1};
  std::size_t token_count = 0;
  std::size_t complex_tokens = 0;  // tokens spanning >= 2 morphemes
  std::size_t immediate_nt_count = 0;

  double mcw_ratio() const {
    return token_count ? static_cast<double>(complex_tokens) / token_count : 0.0;
  }
};

StatsRow corpus_stats(const std::vector<Sentence>& corpus, Level level,
                      const SegmentOptions& options = {});
StatsRow corpus_stats(const std::vector<SyntaxTree>& trees, Level level);

// Table layouts.
std::string format_stats_table(const std::vector<StatsRow>& rows);
std::string format_stats_kv(const std::vector<StatsRow>& rows);
std::string format_prf_kv(const std::string& prefix, const PrfReport& report);

// "370,729"
std::string with_thousands(std::size_t value);

}  // namespace kseg

#endif  // KSEG_METRICS_H_
