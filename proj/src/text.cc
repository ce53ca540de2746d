#include "kseg/text.h"

#include <cctype>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "kseg/errors.h"

namespace kseg {

std::u32string to_u32(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const std::uint8_t*>(utf8.data());
  const auto length = static_cast<std::int32_t>(utf8.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) throw ParseError("invalid UTF-8", 0, static_cast<std::size_t>(i));
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string to_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 3);
  for (char32_t ch : text) out += to_utf8(ch);
  return out;
}

std::string to_utf8(char32_t ch) {
  std::uint8_t buf[U8_MAX_LENGTH];
  std::int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(ch), error);
  if (error) throw DomainError("cannot encode code point as UTF-8");
  return std::string(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

std::size_t code_point_count(std::string_view utf8) {
  std::size_t n = 0;
  for (char c : utf8) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  const icu::UnicodeString in = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<std::int32_t>(utf8.size())));
  if (normalizer->isNormalized(in, status) && U_SUCCESS(status)) {
    return std::string(utf8);
  }
  status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = normalizer->normalize(in, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

bool is_symbol_char(char32_t ch) {
  const auto c = static_cast<UChar32>(ch);
  if (u_ispunct(c)) return true;
  switch (u_charType(c)) {
    case U_MATH_SYMBOL:
    case U_CURRENCY_SYMBOL:
    case U_MODIFIER_SYMBOL:
    case U_OTHER_SYMBOL:
      return true;
    default:
      return false;
  }
}

bool has_whitespace(std::string_view utf8) {
  for (char32_t ch : to_u32(utf8)) {
    if (u_isUWhiteSpace(static_cast<UChar32>(ch))) return true;
  }
  return false;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

std::string join(std::span<const std::string> parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string escape_form(std::string_view form) {
  std::string out;
  out.reserve(form.size());
  for (char c : form) {
    if (c == '\\' || c == '/' || c == '+') out += '\\';
    out += c;
  }
  return out;
}

std::string format_analysis(std::span<const Morpheme> morphemes, bool with_sense) {
  std::string out;
  for (std::size_t i = 0; i < morphemes.size(); ++i) {
    if (i) out += '+';
    out += escape_form(morphemes[i].form);
    if (with_sense && morphemes[i].sense) out += "__" + *morphemes[i].sense;
    out += '/';
    out += tag_name(morphemes[i].tag);
  }
  return out;
}

namespace {

bool IsSenseSuffix(std::string_view form, std::size_t pos) {
  // "__" followed by exactly two digits at the end, with a non-empty stem.
  return pos > 0 && pos + 4 == form.size() && form[pos] == '_' &&
         form[pos + 1] == '_' && std::isdigit(static_cast<unsigned char>(form[pos + 2])) &&
         std::isdigit(static_cast<unsigned char>(form[pos + 3]));
}

Morpheme ParseUnit(std::string_view raw, std::size_t column) {
  // Locate the last unescaped '/', unescaping the form as we go.
  std::string form;
  std::optional<std::size_t> slash;
  std::size_t form_end_raw = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\\') {
      if (i + 1 == raw.size()) {
        throw ParseError("dangling escape in analysis", 0, column + i + 1);
      }
      ++i;
      continue;
    }
    if (raw[i] == '/') {
      if (slash) throw ParseError("unescaped '/' in morpheme form", 0, column + *slash + 1);
      slash = i;
    }
  }
  if (!slash) throw ParseError("missing '/TAG' in morpheme", 0, column + 1);
  form_end_raw = *slash;
  for (std::size_t i = 0; i < form_end_raw; ++i) {
    if (raw[i] == '\\') ++i;
    form += raw[i];
  }
  const std::string_view tag_text = raw.substr(*slash + 1);
  const auto tag = parse_tag(tag_text);
  if (!tag) {
    throw ParseError("unknown tag '" + std::string(tag_text) + "'", 0,
                     column + *slash + 2);
  }
  Morpheme m;
  m.tag = *tag;
  if (form.size() > 4 && IsSenseSuffix(form, form.size() - 4)) {
    m.sense = form.substr(form.size() - 2);
    form.resize(form.size() - 4);
  }
  if (form.empty()) throw ParseError("empty morpheme form", 0, column + 1);
  if (has_whitespace(form)) throw ParseError("whitespace in morpheme form", 0, column + 1);
  m.form = std::move(form);
  return m;
}

}  // namespace

std::vector<Morpheme> parse_analysis(std::string_view text) {
  std::vector<Morpheme> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i + 1 < text.size() && text[i] == '\\') {
      ++i;
      continue;
    }
    if (i == text.size() || text[i] == '+') {
      if (i == start) throw ParseError("empty morpheme in analysis", 0, i + 1);
      out.push_back(ParseUnit(text.substr(start, i - start), start));
      start = i + 1;
    }
  }
  return out;
}

std::string composite_tag(std::span<const Morpheme> morphemes) {
  std::string out;
  for (std::size_t i = 0; i < morphemes.size(); ++i) {
    if (i) out += '+';
    out += tag_name(morphemes[i].tag);
  }
  return out;
}

std::vector<SejongTag> parse_composite_tag(std::string_view text) {
  std::vector<SejongTag> out;
  for (std::string_view part : split(text, '+')) {
    const auto tag = parse_tag(part);
    if (!tag) throw ParseError("unknown tag '" + std::string(part) + "'");
    out.push_back(*tag);
  }
  return out;
}

}  // namespace kseg
