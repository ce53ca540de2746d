#include "kseg/core_model.h"

#include <algorithm>

#include "kseg/errors.h"

namespace kseg {

namespace {

struct TagInfo {
  SejongTag tag;
  std::string_view name;
  TagClass cls;
};

constexpr TagClass L = TagClass::kLexical;
constexpr TagClass C = TagClass::kCaseMarker;
constexpr TagClass E = TagClass::kVerbalEnding;
constexpr TagClass S = TagClass::kSymbol;

// Order matches the enum.
constexpr std::array<TagInfo, kSejongTagCount> kTags{{
    {SejongTag::NNG, "NNG", L}, {SejongTag::NNP, "NNP", L},
    {SejongTag::NNB, "NNB", L}, {SejongTag::NP, "NP", L},
    {SejongTag::NR, "NR", L},   {SejongTag::VV, "VV", L},
    {SejongTag::VA, "VA", L},   {SejongTag::VX, "VX", L},
    {SejongTag::VCP, "VCP", L}, {SejongTag::VCN, "VCN", L},
    {SejongTag::MM, "MM", L},   {SejongTag::MAG, "MAG", L},
    {SejongTag::MAJ, "MAJ", L}, {SejongTag::IC, "IC", L},
    {SejongTag::JKS, "JKS", C}, {SejongTag::JKC, "JKC", C},
    {SejongTag::JKG, "JKG", C}, {SejongTag::JKO, "JKO", C},
    {SejongTag::JKB, "JKB", C}, {SejongTag::JKV, "JKV", C},
    {SejongTag::JKQ, "JKQ", C}, {SejongTag::JX, "JX", C},
    {SejongTag::JC, "JC", C},   {SejongTag::EP, "EP", E},
    {SejongTag::EF, "EF", E},   {SejongTag::EC, "EC", E},
    {SejongTag::ETN, "ETN", E}, {SejongTag::ETM, "ETM", E},
    {SejongTag::XPN, "XPN", L}, {SejongTag::XSN, "XSN", L},
    {SejongTag::XSV, "XSV", L}, {SejongTag::XSA, "XSA", L},
    {SejongTag::XR, "XR", L},   {SejongTag::SF, "SF", S},
    {SejongTag::SP, "SP", S},   {SejongTag::SS, "SS", S},
    {SejongTag::SE, "SE", S},   {SejongTag::SO, "SO", S},
    {SejongTag::SW, "SW", S},   {SejongTag::SL, "SL", L},
    {SejongTag::SH, "SH", L},   {SejongTag::SN, "SN", L},
    {SejongTag::NF, "NF", L},   {SejongTag::NV, "NV", L},
    {SejongTag::NA, "NA", L},
}};

constexpr std::array<SejongTag, kSejongTagCount> MakeTagList() {
  std::array<SejongTag, kSejongTagCount> out{};
  for (std::size_t i = 0; i < kTags.size(); ++i) out[i] = kTags[i].tag;
  return out;
}

constexpr std::array<SejongTag, kSejongTagCount> kTagList = MakeTagList();

constexpr int kLeadCount = 19;
constexpr int kVowelCount = 21;
constexpr int kTailCount = 28;  // including "no tail"
constexpr int kBlock = kVowelCount * kTailCount;  // 588

constexpr std::array<char32_t, kLeadCount> kLeadJamo{
    0x3131, 0x3132, 0x3134, 0x3137, 0x3138, 0x3139, 0x3141,
    0x3142, 0x3143, 0x3145, 0x3146, 0x3147, 0x3148, 0x3149,
    0x314A, 0x314B, 0x314C, 0x314D, 0x314E};

// Index 0 unused.
constexpr std::array<char32_t, kTailCount> kTailJamo{
    0,      0x3131, 0x3132, 0x3133, 0x3134, 0x3135, 0x3136,
    0x3137, 0x3139, 0x313A, 0x313B, 0x313C, 0x313D, 0x313E,
    0x313F, 0x3140, 0x3141, 0x3142, 0x3144, 0x3145, 0x3146,
    0x3147, 0x3148, 0x314A, 0x314B, 0x314C, 0x314D, 0x314E};

}  // namespace

std::span<const SejongTag> all_tags() { return kTagList; }

std::string_view tag_name(SejongTag tag) {
  return kTags[static_cast<std::size_t>(tag)].name;
}

std::optional<SejongTag> parse_tag(std::string_view name) {
  for (const auto& info : kTags) {
    if (info.name == name) return info.tag;
  }
  return std::nullopt;
}

TagClass classify_tag(SejongTag tag) {
  return kTags[static_cast<std::size_t>(tag)].cls;
}

std::string_view tag_class_name(TagClass cls) {
  switch (cls) {
    case TagClass::kSymbol: return "Symbol";
    case TagClass::kCaseMarker: return "CaseMarker";
    case TagClass::kVerbalEnding: return "VerbalEnding";
    case TagClass::kLexical: return "Lexical";
  }
  return "Lexical";
}

Level::Level(int value) : value_(value) {
  if (value < kMin || value > kMax) {
    throw DomainError("granularity level must be in 1..5, got " +
                      std::to_string(value));
  }
}

bool is_syllable(char32_t ch) {
  return ch >= kSyllableFirst && ch <= kSyllableLast;
}

JamoTriple decompose_syllable(char32_t ch) {
  if (!is_syllable(ch)) {
    throw DomainError("not a precomposed hangul syllable");
  }
  const int offset = static_cast<int>(ch - kSyllableFirst);
  JamoTriple out;
  out.lead = offset / kBlock;
  out.vowel = (offset % kBlock) / kTailCount;
  if (int tail = offset % kTailCount; tail != 0) out.tail = tail;
  return out;
}

char32_t compose_syllable(const JamoTriple& triple) {
  if (triple.lead < 0 || triple.lead >= kLeadCount || triple.vowel < 0 ||
      triple.vowel >= kVowelCount ||
      (triple.tail && (*triple.tail < 1 || *triple.tail >= kTailCount))) {
    throw DomainError("jamo index out of range");
  }
  const int tail = triple.tail.value_or(0);
  return kSyllableFirst +
         static_cast<char32_t>(triple.lead * kBlock +
                               triple.vowel * kTailCount + tail);
}

char32_t lead_jamo(int lead) {
  if (lead < 0 || lead >= kLeadCount) throw DomainError("lead index out of range");
  return kLeadJamo[lead];
}

char32_t vowel_jamo(int vowel) {
  if (vowel < 0 || vowel >= kVowelCount) {
    throw DomainError("vowel index out of range");
  }
  return 0x314F + static_cast<char32_t>(vowel);
}

char32_t tail_jamo(int tail) {
  if (tail < 1 || tail >= kTailCount) throw DomainError("tail index out of range");
  return kTailJamo[tail];
}

std::optional<int> ending_jamo_tail(char32_t ch) {
  switch (ch) {
    case 0x3134: return 4;   // ㄴ
    case 0x3139: return 8;   // ㄹ
    case 0x3141: return 16;  // ㅁ
    case 0x3142: return 17;  // ㅂ
    default: return std::nullopt;
  }
}

}  // namespace kseg
