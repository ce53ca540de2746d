#ifndef KSEG_TEXT_H_
#define KSEG_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kseg/core_model.h"

namespace kseg {

// UTF-8 <-> UTF-32. Invalid UTF-8 raises ParseError.
std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view text);
std::string to_utf8(char32_t ch);
std::size_t code_point_count(std::string_view utf8);

// NFC normalization.
std::string nfc(std::string_view utf8);

// Punctuation or symbol character (Unicode P* or S* categories).
bool is_symbol_char(char32_t ch);
bool has_whitespace(std::string_view utf8);

std::vector<std::string_view> split(std::string_view text, char sep);
std::vector<std::string_view> split_whitespace(std::string_view text);
std::string join(std::span<const std::string> parts, std::string_view sep);

// Morpheme-form escaping used by the `form/TAG+form/TAG` notation: '\', '/'
// and '+' are written as "\\", "\/" and "\+".
std::string escape_form(std::string_view form);

// `form/TAG(+form/TAG)*`. Senses are written as `form__NN` when requested.
std::string format_analysis(std::span<const Morpheme> morphemes,
                            bool with_sense = false);

// Inverse of format_analysis. Throws ParseError (line 0, column set).
std::vector<Morpheme> parse_analysis(std::string_view text);

// '+'-joined tag names.
std::string composite_tag(std::span<const Morpheme> morphemes);
// Splits a composite tag; throws ParseError on an unknown component.
std::vector<SejongTag> parse_composite_tag(std::string_view text);

}  // namespace kseg

#endif  // KSEG_TEXT_H_
