#ifndef KSEG_TAGGER_H_
#define KSEG_TAGGER_H_

#include <cstddef>
#include <map>
#include <span>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kseg/core_model.h"
#include "kseg/granularity.h"
#include "kseg/metrics.h"

namespace kseg {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";

// Baseline segment-and-tag model: an eojeol dictionary plus a first-order HMM
// over composite tags at one granularity level. Stores counts only;
// probabilities are derived with additive smoothing.
class TaggerModel {
 public:
  struct AnalysisCount {
    std::vector<Morpheme> morphemes;
    std::size_t count = 0;
  };
  struct Emission {
    std::size_t count = 0;
    std::vector<std::string> morpheme_forms;  // first-seen decomposition
  };

  TaggerModel(Level level, double smoothing_k);

  Level level() const { return level_; }
  double smoothing_k() const { return smoothing_k_; }

  // Tags observed as token tags, sorted.
  const std::vector<std::string>& tags() const { return tags_; }
  // Observed tags that consist of one Sejong tag; candidates for unknown forms.
  const std::vector<std::string>& atomic_tags() const { return atomic_tags_; }

  bool knows_form(const std::string& form) const;
  // Tags observed with `form`, sorted; empty for unknown forms.
  std::vector<std::string> tags_for(const std::string& form) const;

  // Most frequent analysis of a surface eojeol (ties: first seen).
  const EojeolAnalysis* lookup(const std::string& surface) const;

  double log_transition(std::string_view prev, std::string_view next) const;
  double transition(std::string_view prev, std::string_view next) const;
  // P(form | tag) for known forms; the suffix or uniform model for unknown
  // forms.
  double log_emission(const std::string& tag, const std::string& form) const;
  double emission(const std::string& tag, const std::string& form) const;
  double unknown_emission(const std::string& tag, const std::string& form) const;

  // Canonical morphemes for `form` tagged `tag`.
  std::vector<Morpheme> decompose(const std::string& form, const std::string& tag) const;

  // Contexts with at least one observation (BOS first, then tags).
  std::vector<std::string> transition_contexts() const;
  std::size_t vocabulary_size() const { return form_counts_.size(); }
  std::vector<std::string> vocabulary() const;
  // Emission mass reserved for forms never seen with any tag.
  double unknown_form_mass(const std::string& tag) const;
  std::size_t dictionary_size() const { return dictionary_.size(); }

  std::string serialize() const;
  static TaggerModel deserialize(std::string_view text);

  friend bool operator==(const TaggerModel& a, const TaggerModel& b) {
    return a.serialize() == b.serialize();
  }

 private:
  friend TaggerModel train(const std::vector<Sentence>&, Level, double);

  void AddToken(const std::string& prev, const std::string& tag, const std::string& form,
                std::span<const Morpheme> morphemes);
  void AddEojeol(const EojeolAnalysis& eojeol);
  void Finalize();

  Level level_;
  double smoothing_k_;

  // surface -> analyses in first-seen order
  std::map<std::string, std::vector<AnalysisCount>> dictionary_;
  std::map<std::string, EojeolAnalysis> best_;
  std::map<std::pair<std::string, std::string>, std::size_t> transitions_;
  std::map<std::string, std::size_t> context_totals_;
  std::map<std::pair<std::string, std::string>, Emission> emissions_;  // (tag, form)
  std::map<std::string, std::size_t> tag_totals_;
  std::map<std::string, std::map<std::string, std::size_t>> form_tags_;  // form -> tag -> n
  std::map<std::string, std::size_t> form_counts_;
  // final syllable -> atomic tag -> count
  std::map<std::string, std::map<std::string, std::size_t>> suffixes_;
  std::vector<std::string> tags_;
  std::vector<std::string> atomic_tags_;
};

TaggerModel train(const std::vector<Sentence>& corpus, Level level,
                  double smoothing_k = 0.1);

// Highest-scoring tag sequence under the model. Known forms are restricted to
// tags observed with them; unknown forms to atomic tags. Ties resolve to the
// lexicographically smaller tag.
std::vector<std::string> viterbi(const TaggerModel& model,
                                 const std::vector<std::string>& forms);

// Log score of a complete tag sequence (BOS/EOS included).
double sequence_log_score(const TaggerModel& model, const std::vector<std::string>& forms,
                          const std::vector<std::string>& tags);

// Segments raw eojeols (dictionary lookup, else trailing-symbol stripping at
// level >= 2) and tags the token stream.
SegmentedSentence analyze(const TaggerModel& model, const std::vector<std::string>& eojeols,
                          std::string id = {});

// Tags a given segmentation: token forms per eojeol.
SegmentedSentence tag_segmented(const TaggerModel& model,
                                const std::vector<std::string>& surfaces,
                                const std::vector<std::vector<std::string>>& token_forms,
                                std::string id = {});

enum class SegmentationSource {
  kModel,  // the tagger segments raw text
  kGold,   // gold level-k token forms are supplied
};

struct PipelineReport {
  PrfReport segmentation;
  Accuracy pos;
};

PipelineReport evaluate_pipeline(const TaggerModel& model,
                                 const std::vector<std::vector<std::string>>& raw,
                                 const std::vector<Sentence>& gold,
                                 SegmentationSource source = SegmentationSource::kModel);

}  // namespace kseg

#endif  // KSEG_TAGGER_H_
