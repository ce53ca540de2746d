#ifndef KSEG_CORE_MODEL_H_
#define KSEG_CORE_MODEL_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kseg {

// Closed Sejong part-of-speech tagset.
enum class SejongTag : std::uint8_t {
  NNG, NNP, NNB, NP, NR,
  VV, VA, VX, VCP, VCN,
  MM, MAG, MAJ, IC,
  JKS, JKC, JKG, JKO, JKB, JKV, JKQ, JX, JC,
  EP, EF, EC, ETN, ETM,
  XPN, XSN, XSV, XSA, XR,
  SF, SP, SS, SE, SO, SW, SL, SH, SN,
  NF, NV, NA,
};

inline constexpr std::size_t kSejongTagCount = 45;

// Coarse grouping that drives the granularity cascade.
enum class TagClass : std::uint8_t { kSymbol, kCaseMarker, kVerbalEnding, kLexical };

std::span<const SejongTag> all_tags();
std::string_view tag_name(SejongTag tag);
std::optional<SejongTag> parse_tag(std::string_view name);
TagClass classify_tag(SejongTag tag);
std::string_view tag_class_name(TagClass cls);

// One canonical-form/tag unit. The sense number is carried through I/O but
// never takes part in comparisons.
struct Morpheme {
  std::string form;
  SejongTag tag = SejongTag::NA;
  std::optional<std::string> sense;

  friend bool operator==(const Morpheme& a, const Morpheme& b) {
    return a.form == b.form && a.tag == b.tag;
  }
};

// An as-written eojeol and its left-to-right morpheme analysis.
struct EojeolAnalysis {
  std::string surface;
  std::vector<Morpheme> morphemes;

  friend bool operator==(const EojeolAnalysis&, const EojeolAnalysis&) = default;
};

struct Sentence {
  std::string id;
  std::vector<EojeolAnalysis> eojeols;
  // Per-eojeol record ids from the source file; empty when not known.
  std::vector<std::string> record_ids;

  friend bool operator==(const Sentence& a, const Sentence& b) {
    return a.id == b.id && a.eojeols == b.eojeols;
  }
};

// Segmentation granularity, 1 (eojeols) through 5 (all morphemes).
class Level {
 public:
  static constexpr int kMin = 1;
  static constexpr int kMax = 5;

  // Throws DomainError outside 1..5.
  explicit Level(int value);

  int value() const { return value_; }
  friend auto operator<=>(const Level&, const Level&) = default;

 private:
  int value_;
};

inline const std::array<Level, 5>& all_levels() {
  static const std::array<Level, 5> levels{Level(1), Level(2), Level(3),
                                           Level(4), Level(5)};
  return levels;
}

// Hangul syllable decomposed into conjoining-jamo indices.
struct JamoTriple {
  int lead = 0;                    // choseong 0..18
  int vowel = 0;                   // jungseong 0..20
  std::optional<int> tail;         // jongseong 1..27

  friend bool operator==(const JamoTriple&, const JamoTriple&) = default;
};

inline constexpr char32_t kSyllableFirst = 0xAC00;
inline constexpr char32_t kSyllableLast = 0xD7A3;

bool is_syllable(char32_t ch);
JamoTriple decompose_syllable(char32_t ch);
char32_t compose_syllable(const JamoTriple& triple);

// Compatibility jamo for a lead index (e.g. 11 -> U+3147 ㅇ), vowel index and
// tail index. Used for display and for lone-jamo endings.
char32_t lead_jamo(int lead);
char32_t vowel_jamo(int vowel);
char32_t tail_jamo(int tail);

// Jongseong index of a lone-jamo ending (ㄴ, ㄹ, ㅁ, ㅂ); nullopt otherwise.
std::optional<int> ending_jamo_tail(char32_t ch);

}  // namespace kseg

#endif  // KSEG_CORE_MODEL_H_
