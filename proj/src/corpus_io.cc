#include "kseg/corpus_io.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "kseg/errors.h"
#include "kseg/text.h"

namespace kseg {

namespace {

// Splits text into lines, dropping a trailing '\r' from each.
std::vector<std::string_view> Lines(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  }
  return lines;
}

bool IsBlank(std::string_view line) { return split_whitespace(line).empty(); }

std::string_view IdPrefix(std::string_view id) {
  const std::size_t dash = id.rfind('-');
  return dash == std::string_view::npos ? id : id.substr(0, dash);
}

// Increments the trailing digit run of `base` by `offset`, keeping its width.
std::string RecordId(const std::string& base, std::size_t offset) {
  std::size_t start = base.size();
  while (start > 0 && std::isdigit(static_cast<unsigned char>(base[start - 1]))) --start;
  if (start == base.size() || base.size() - start > 18) {
    return offset == 0 ? base : base + "-" + std::to_string(offset);
  }
  unsigned long long value = std::stoull(base.substr(start)) + offset;
  std::string digits = std::to_string(value);
  const std::size_t width = base.size() - start;
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return base.substr(0, start) + digits;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sejong morph corpus

std::vector<Sentence> read_morph_corpus(std::string_view text,
                                        const MorphReadOptions& options) {
  std::vector<Sentence> out;
  Sentence current;
  auto flush = [&] {
    if (!current.eojeols.empty()) out.push_back(std::move(current));
    current = Sentence{};
  };

  const auto lines = Lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    if (IsBlank(lines[n])) {
      flush();
      continue;
    }
    const std::string line = nfc(lines[n]);
    const auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw ParseError("expected 3 tab-separated fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    const std::string_view id = fields[0];
    const std::string_view surface = fields[1];
    if (surface.empty() || has_whitespace(surface)) {
      throw ParseError("empty or whitespace-bearing surface", line_no);
    }
    if (options.boundary == SentenceBoundary::kIdPrefix && !current.eojeols.empty() &&
        IdPrefix(current.id) != IdPrefix(id)) {
      flush();
    }
    EojeolAnalysis eojeol;
    eojeol.surface = std::string(surface);
    try {
      eojeol.morphemes = parse_analysis(fields[2]);
    } catch (const ParseError& e) {
      const std::size_t offset = fields[0].size() + fields[1].size() + 2;
      throw ParseError(std::string("bad analysis '") + std::string(fields[2]) + "'",
                       line_no, e.column() ? e.column() + offset : 0);
    }
    if (current.eojeols.empty()) current.id = std::string(id);
    current.record_ids.emplace_back(id);
    current.eojeols.push_back(std::move(eojeol));
  }
  flush();
  return out;
}

std::string write_morph_corpus(const std::vector<Sentence>& sentences) {
  std::string out;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const Sentence& sentence = sentences[s];
    if (s) out += '\n';
    const bool have_ids = sentence.record_ids.size() == sentence.eojeols.size();
    const std::string base = sentence.id.empty() ? "S" + std::to_string(s + 1) : sentence.id;
    for (std::size_t e = 0; e < sentence.eojeols.size(); ++e) {
      const auto& eojeol = sentence.eojeols[e];
      out += have_ids ? sentence.record_ids[e] : RecordId(base, e);
      out += '\t';
      out += eojeol.surface;
      out += '\t';
      out += format_analysis(eojeol.morphemes, /*with_sense=*/true);
      out += '\n';
    }
  }
  return nfc(out);
}

// ---------------------------------------------------------------------------
// Bracketed trees

namespace {

std::string EscapeAtom(std::string_view atom) {
  std::string out;
  for (char c : atom) {
    if (c == '(' || c == ')') out += '\\';
    out += c;
  }
  return out;
}

std::string EscapePennForm(std::string_view form) {
  std::string out;
  for (char c : form) {
    if (c == '(' || c == ')' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string UnescapeAll(std::string_view raw) {
  std::string out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\\' && i + 1 < raw.size()) ++i;
    out += raw[i];
  }
  return out;
}

// Surface of an eojeol spelled from canonical forms, fusing lone-jamo endings
// into an open preceding syllable.
std::string SpellSurface(const std::vector<Morpheme>& morphemes) {
  std::u32string out;
  for (const auto& m : morphemes) {
    const std::u32string form = to_u32(m.form);
    if (!out.empty() && !form.empty() && is_syllable(out.back())) {
      if (const auto tail = ending_jamo_tail(form.front())) {
        JamoTriple t = decompose_syllable(out.back());
        if (!t.tail) {
          t.tail = *tail;
          out.back() = compose_syllable(t);
          out += form.substr(1);
          continue;
        }
      }
    }
    out += form;
  }
  return to_utf8(out);
}

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  struct Parsed {
    SyntaxTree tree;
    std::optional<std::string> raw;
  };

  std::vector<Parsed> ParseAll() {
    std::vector<Parsed> trees;
    std::optional<std::string> raw;
    while (true) {
      SkipSpace();
      if (pos_ >= text_.size()) break;
      const char c = text_[pos_];
      if (c == ';') {
        raw = ReadCommentLine();
        continue;
      }
      if (c != '(') Fail("expected '(' at top level");
      leaf_ordinal_ = 0;
      trees.push_back({ParseNode(), std::move(raw)});
      raw.reset();
    }
    return trees;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) {
        ++column;
      }
    }
    throw ParseError(what, line, column);
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  std::string ReadCommentLine() {
    const std::size_t end = text_.find('\n', pos_);
    std::string_view line = text_.substr(pos_ + 1, end == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : end - pos_ - 1);
    pos_ = end == std::string_view::npos ? text_.size() : end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    return std::string(line);
  }

  // Reads an atom; backslash escapes the next byte.
  std::string_view ReadAtom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\\' && pos_ + 1 < text_.size()) {
        pos_ += 2;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '(' || c == ')') break;
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  SyntaxTree SejongPreterminal(std::vector<Morpheme> morphemes) {
    TreeLeaf leaf;
    leaf.token.eojeol_index = leaf_ordinal_++;
    leaf.token.range = {0, morphemes.size()};
    leaf.token.composite_tag = composite_tag(morphemes);
    EojeolAnalysis eojeol;
    eojeol.morphemes = std::move(morphemes);
    leaf.eojeol = std::move(eojeol);
    return SyntaxTree::Preterminal(std::move(leaf));
  }

  std::optional<std::vector<Morpheme>> TryAnalysis(std::string_view atom) {
    try {
      return parse_analysis(nfc(atom));
    } catch (const ParseError&) {
      return std::nullopt;
    }
  }

  SyntaxTree ParseNode() {
    const std::size_t open = pos_;
    ++pos_;  // '('
    SkipSpace();
    std::string label;
    if (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')') {
      label = UnescapeAll(ReadAtom());
    }
    struct Child {
      std::optional<SyntaxTree> node;
      std::string_view atom;
      std::size_t pos;
    };
    std::vector<Child> children;
    while (true) {
      SkipSpace();
      if (pos_ >= text_.size()) {
        pos_ = open;
        Fail("unbalanced parentheses");
      }
      const char c = text_[pos_];
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c == '(') {
        children.push_back({ParseNode(), {}, pos_});
      } else {
        const std::size_t at = pos_;
        children.push_back({std::nullopt, ReadAtom(), at});
      }
    }
    if (children.empty()) {
      pos_ = open;
      Fail("empty phrase");
    }

    // Penn preterminal: (TAG form) where TAG is a composite Sejong tag and the
    // form is not itself an analysis.
    if (children.size() == 1 && !children.front().node) {
      const std::string_view atom = children.front().atom;
      if (auto analysis = TryAnalysis(atom)) {
        SyntaxTree phrase;
        phrase.label = label;
        phrase.children.push_back(SejongPreterminal(std::move(*analysis)));
        return phrase;
      }
      std::vector<SejongTag> tags;
      try {
        tags = parse_composite_tag(label);
      } catch (const ParseError&) {
        pos_ = children.front().pos;
        Fail("unparseable leaf '" + std::string(atom) + "'");
      }
      TreeLeaf leaf;
      leaf.token.eojeol_index = leaf_ordinal_++;
      leaf.token.range = {0, tags.size()};
      leaf.token.form = nfc(UnescapeAll(atom));
      leaf.token.composite_tag = label;
      return SyntaxTree::Preterminal(std::move(leaf));
    }

    SyntaxTree phrase;
    phrase.label = label;
    for (auto& child : children) {
      if (child.node) {
        phrase.children.push_back(std::move(*child.node));
        continue;
      }
      auto analysis = TryAnalysis(child.atom);
      if (!analysis) {
        pos_ = child.pos;
        Fail("unparseable leaf '" + std::string(child.atom) + "'");
      }
      phrase.children.push_back(SejongPreterminal(std::move(*analysis)));
    }
    return phrase;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t leaf_ordinal_ = 0;
};

void FillSurfaces(SyntaxTree& node, const std::vector<std::string_view>& words,
                  bool use_words) {
  if (node.leaf) {
    TreeLeaf& leaf = *node.leaf;
    if (leaf.eojeol && leaf.eojeol->surface.empty()) {
      leaf.eojeol->surface = use_words ? nfc(words[leaf.token.eojeol_index])
                                       : SpellSurface(leaf.eojeol->morphemes);
      leaf.token.form = leaf.eojeol->surface;
    }
    return;
  }
  for (auto& c : node.children) FillSurfaces(c, words, use_words);
}

void WriteNode(const SyntaxTree& node, BracketStyle style, std::string& out) {
  if (node.is_preterminal()) {
    const TreeLeaf& leaf = *node.children.front().leaf;
    if (style == BracketStyle::kSejong) {
      if (!leaf.eojeol || leaf.token.range.begin != 0 ||
          leaf.token.range.end != leaf.eojeol->morphemes.size()) {
        throw StructuralError("Sejong bracket style needs whole-eojeol leaves");
      }
      out += EscapeAtom(format_analysis(leaf.eojeol->morphemes, /*with_sense=*/true));
      return;
    }
    out += '(';
    out += node.label;
    out += ' ';
    out += EscapePennForm(leaf.token.form);
    out += ')';
    return;
  }
  if (node.is_leaf()) {
    out += EscapePennForm(node.leaf->token.form);
    return;
  }
  out += '(';
  out += node.label;
  for (const auto& child : node.children) {
    out += ' ';
    WriteNode(child, style, out);
  }
  out += ')';
}

}  // namespace

std::vector<SyntaxTree> read_treebank(std::string_view text) {
  std::vector<SyntaxTree> trees;
  for (auto& [tree, raw] : TreeParser(text).ParseAll()) {
    std::size_t sejong_leaves = 0;
    const auto leaves = tree_leaves(tree);
    for (const TreeLeaf* leaf : leaves) sejong_leaves += leaf->eojeol.has_value();
    std::vector<std::string_view> words;
    if (raw) words = split_whitespace(*raw);
    const bool use_words = raw && sejong_leaves == leaves.size() && words.size() == leaves.size();
    FillSurfaces(tree, words, use_words);
    trees.push_back(std::move(tree));
  }
  return trees;
}

std::string write_bracketed(const SyntaxTree& tree, BracketStyle style) {
  std::string out;
  WriteNode(tree, style, out);
  return nfc(out);
}

std::string write_treebank(const std::vector<SyntaxTree>& trees, BracketStyle style) {
  std::string out;
  for (const auto& tree : trees) {
    if (style == BracketStyle::kSejong) {
      const Sentence s = tree_sentence(tree);
      out += ';';
      for (const auto& e : s.eojeols) {
        out += ' ';
        out += e.surface;
      }
      out += '\n';
    }
    out += write_bracketed(tree, style);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// CoNLL-U

namespace {

std::optional<std::string_view> ContentUpos(SejongTag tag) {
  switch (tag) {
    case SejongTag::NNG: case SejongTag::NNB: case SejongTag::NR: case SejongTag::NF:
      return "NOUN";
    case SejongTag::NNP: return "PROPN";
    case SejongTag::NP: return "PRON";
    case SejongTag::VV: case SejongTag::VA: case SejongTag::VX:
    case SejongTag::VCP: case SejongTag::VCN: case SejongTag::NV:
      return "VERB";
    case SejongTag::MM: return "DET";
    case SejongTag::MAG: case SejongTag::MAJ: return "ADV";
    case SejongTag::IC: return "INTJ";
    case SejongTag::SN: return "NUM";
    case SejongTag::SL: case SejongTag::SH: case SejongTag::NA: return "X";
    default: return std::nullopt;
  }
}

std::string_view FunctionalUpos(SejongTag tag) {
  if (tag == SejongTag::SW) return "SYM";
  switch (classify_tag(tag)) {
    case TagClass::kSymbol: return "PUNCT";
    case TagClass::kCaseMarker: return "ADP";
    case TagClass::kVerbalEnding: return "PART";
    case TagClass::kLexical: break;
  }
  if (auto upos = ContentUpos(tag)) return *upos;
  return "PART";  // XPN, XSN, XSV, XSA, XR
}

struct LoneJamoLemma {
  std::string_view jamo;
  std::string_view lemma;
};

constexpr LoneJamoLemma kJamoLemmas[] = {
    {"ㄴ", "은"}, {"ㄹ", "을"}, {"ㅁ", "음"}, {"ㅂ", "습"}};

std::string EscapeLemmaPart(std::string_view form) {
  std::string out;
  for (char c : form) {
    if (c == '+' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

bool IsSymbolToken(const SegmentedSentence& s, const TokenGroup& t) {
  const auto& ms = s.source.eojeols[t.eojeol_index].morphemes;
  for (std::size_t i = t.range.begin; i < t.range.end; ++i) {
    if (classify_tag(ms[i].tag) != TagClass::kSymbol) return false;
  }
  return true;
}

std::string Row(std::string_view id, std::string_view form, std::string_view lemma,
                std::string_view upos, std::string_view xpos, bool space_after) {
  std::string row;
  row += id;
  row += '\t';
  row += form;
  row += '\t';
  row += lemma;
  row += '\t';
  row += upos;
  row += '\t';
  row += xpos;
  row += "\t_\t_\t_\t_\t";
  row += space_after ? "_" : "SpaceAfter=No";
  row += '\n';
  return row;
}

std::string StripPrefix(std::u32string s, const std::u32string& p, bool& ok) {
  ok = s.size() >= p.size() && std::equal(p.begin(), p.end(), s.begin());
  return ok ? to_utf8(s.substr(p.size())) : to_utf8(s);
}

}  // namespace

std::string upos_for_group(std::span<const Morpheme> group) {
  if (group.empty()) return "X";
  if (group.size() > 1) {
    for (auto it = group.rbegin(); it != group.rend(); ++it) {
      if (classify_tag(it->tag) != TagClass::kLexical) continue;
      if (auto upos = ContentUpos(it->tag)) return std::string(*upos);
    }
  }
  return std::string(FunctionalUpos(group.front().tag));
}

std::string lemma_for_group(std::span<const Morpheme> group, std::string_view form) {
  if (group.size() == 1) {
    for (const auto& entry : kJamoLemmas) {
      if (group.front().form == entry.jamo && form == entry.jamo) {
        return std::string(entry.lemma);
      }
    }
    return group.front().form;
  }
  std::string out;
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (i) out += '+';
    out += EscapeLemmaPart(group[i].form);
  }
  return out;
}

std::string write_conllu(const SegmentedSentence& segmented) {
  const Sentence& source = segmented.source;
  std::string out;
  if (!source.id.empty()) out += "# sent_id = " + source.id + "\n";
  out += "# level = " + std::to_string(segmented.level.value()) + "\n";
  out += "# text =";
  for (const auto& e : source.eojeols) out += " " + e.surface;
  out += "\n";

  const auto& tokens = segmented.tokens;
  std::size_t t = 0;
  while (t < tokens.size()) {
    const std::size_t eojeol_index = tokens[t].eojeol_index;
    const EojeolAnalysis& eojeol = source.eojeols.at(eojeol_index);
    std::size_t end = t;
    while (end < tokens.size() && tokens[end].eojeol_index == eojeol_index) ++end;

    // Words of this eojeol: runs of >= 2 non-symbol tokens become ranges.
    struct Word {
      std::size_t first;
      std::size_t last;  // inclusive
    };
    std::vector<Word> words;
    for (std::size_t i = t; i < end;) {
      if (IsSymbolToken(segmented, tokens[i])) {
        words.push_back({i, i});
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < end && !IsSymbolToken(segmented, tokens[j + 1])) ++j;
      if (j > i) {
        words.push_back({i, j});
      } else {
        words.push_back({i, i});
      }
      i = j + 1;
    }
    std::size_t runs = 0;
    for (const auto& w : words) runs += w.last > w.first;

    for (std::size_t w = 0; w < words.size(); ++w) {
      const bool space_after = w + 1 == words.size();
      const Word& word = words[w];
      auto emit_token = [&](std::size_t i, bool space) {
        const TokenGroup& tok = tokens[i];
        const std::span<const Morpheme> group(eojeol.morphemes.data() + tok.range.begin,
                                              tok.range.size());
        out += Row(std::to_string(i + 1), tok.form, lemma_for_group(group, tok.form),
                   upos_for_group(group), tok.composite_tag, space);
      };
      if (word.first == word.last) {
        emit_token(word.first, space_after);
        continue;
      }
      std::string form;
      if (runs == 1) {
        // Surface minus the symbol tokens peeled off either end.
        std::u32string surface = to_u32(eojeol.surface);
        bool ok = true;
        for (std::size_t i = t; i < word.first && ok; ++i) {
          surface = to_u32(StripPrefix(surface, to_u32(tokens[i].form), ok));
        }
        for (std::size_t i = end; i-- > word.last + 1 && ok;) {
          const std::u32string f = to_u32(tokens[i].form);
          ok = surface.size() >= f.size() &&
               std::equal(f.rbegin(), f.rend(), surface.rbegin());
          if (ok) surface.resize(surface.size() - f.size());
        }
        if (ok && !surface.empty()) form = to_utf8(surface);
      }
      if (form.empty()) {
        for (std::size_t i = word.first; i <= word.last; ++i) form += tokens[i].form;
      }
      out += Row(std::to_string(word.first + 1) + "-" + std::to_string(word.last + 1), form,
                 "_", "_", "_", space_after);
      for (std::size_t i = word.first; i <= word.last; ++i) emit_token(i, true);
    }
    t = end;
  }
  out += "\n";
  return nfc(out);
}

std::string write_conllu(const std::vector<SegmentedSentence>& sentences) {
  std::string out;
  for (const auto& s : sentences) out += write_conllu(s);
  return out;
}

namespace {

struct ConlluWord {
  std::string form;
  std::size_t first = 0;  // token index
  std::size_t last = 0;   // inclusive
  bool space_after = true;
};

struct ConlluToken {
  std::string form;
  std::string lemma;
  std::string xpos;
  bool space_after = true;
  std::size_t line = 0;
};

std::size_t ParseIndex(std::string_view text, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw ParseError("bad token id '" + std::string(text) + "'", line, 1);
  }
  return value;
}

bool SpaceAfterNo(std::string_view misc) {
  for (std::string_view item : split(misc, '|')) {
    if (item == "SpaceAfter=No") return true;
  }
  return false;
}

std::vector<Morpheme> TokenMorphemes(const ConlluToken& tok) {
  std::vector<SejongTag> tags;
  try {
    tags = parse_composite_tag(tok.xpos);
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()) + " in XPOS", tok.line, 5);
  }
  std::vector<std::string> forms;
  if (tags.size() == 1) {
    std::string lemma = tok.lemma == "_" ? tok.form : tok.lemma;
    for (const auto& entry : kJamoLemmas) {
      if (tok.form == entry.jamo && lemma == entry.lemma) lemma = tok.form;
    }
    forms.push_back(std::move(lemma));
  } else {
    std::string part;
    for (std::size_t i = 0; i < tok.lemma.size(); ++i) {
      const char c = tok.lemma[i];
      if (c == '\\' && i + 1 < tok.lemma.size()) {
        part += tok.lemma[++i];
      } else if (c == '+') {
        forms.push_back(std::move(part));
        part.clear();
      } else {
        part += c;
      }
    }
    forms.push_back(std::move(part));
    if (forms.size() != tags.size()) {
      throw ParseError("lemma '" + tok.lemma + "' does not match XPOS '" + tok.xpos + "'",
                       tok.line, 3);
    }
  }
  std::vector<Morpheme> out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (forms[i].empty()) throw ParseError("empty lemma component", tok.line, 3);
    out.push_back({forms[i], tags[i], std::nullopt});
  }
  return out;
}

bool AllSymbols(const std::vector<Morpheme>& ms) {
  for (const auto& m : ms) {
    if (classify_tag(m.tag) != TagClass::kSymbol) return false;
  }
  return true;
}

SegmentedSentence BuildSentence(const std::vector<ConlluToken>& tokens,
                                const std::vector<ConlluWord>& words,
                                const std::string& id, Level level, bool explicit_spacing) {
  SegmentedSentence out;
  out.level = level;
  out.source.id = id;

  std::vector<std::vector<Morpheme>> token_morphemes;
  token_morphemes.reserve(tokens.size());
  for (const auto& tok : tokens) token_morphemes.push_back(TokenMorphemes(tok));

  // Group words into eojeols.
  std::vector<std::vector<std::size_t>> eojeol_words;
  bool join_next = false;
  for (std::size_t w = 0; w < words.size(); ++w) {
    const ConlluWord& word = words[w];
    bool attach = join_next;
    if (!explicit_spacing && !eojeol_words.empty() && word.first == word.last &&
        AllSymbols(token_morphemes[word.first])) {
      attach = true;
    }
    if (!attach || eojeol_words.empty()) eojeol_words.emplace_back();
    eojeol_words.back().push_back(w);
    join_next = explicit_spacing ? !word.space_after : false;
  }

  for (std::size_t e = 0; e < eojeol_words.size(); ++e) {
    EojeolAnalysis eojeol;
    for (std::size_t w : eojeol_words[e]) {
      const ConlluWord& word = words[w];
      eojeol.surface += word.form;
      for (std::size_t i = word.first; i <= word.last; ++i) {
        const std::size_t begin = eojeol.morphemes.size();
        for (auto& m : token_morphemes[i]) eojeol.morphemes.push_back(m);
        out.tokens.push_back(
            {e, {begin, eojeol.morphemes.size()}, tokens[i].form, tokens[i].xpos});
      }
    }
    out.source.eojeols.push_back(std::move(eojeol));
  }
  return out;
}

}  // namespace

std::vector<SegmentedSentence> read_conllu(std::string_view text, std::optional<Level> level) {
  std::vector<SegmentedSentence> out;
  std::vector<ConlluToken> tokens;
  std::vector<ConlluWord> words;
  std::string id;
  std::optional<Level> sentence_level;
  bool has_text = false;
  bool any_space_info = false;
  std::size_t range_end = 0;   // last token index covered by the open range
  std::optional<std::size_t> open_range;  // index into words

  auto flush = [&] {
    if (!tokens.empty()) {
      const Level lv = sentence_level.value_or(level.value_or(Level(5)));
      out.push_back(BuildSentence(tokens, words, id, lv, has_text || any_space_info));
    }
    tokens.clear();
    words.clear();
    id.clear();
    sentence_level.reset();
    has_text = false;
    any_space_info = false;
    range_end = 0;
    open_range.reset();
  };

  const auto lines = Lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    const std::string_view raw = lines[n];
    if (IsBlank(raw)) {
      flush();
      continue;
    }
    if (raw.front() == '#') {
      std::string_view body = raw.substr(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      if (body.starts_with("sent_id")) {
        const std::size_t eq = body.find('=');
        if (eq != std::string_view::npos) {
          std::string_view v = body.substr(eq + 1);
          while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
          id = std::string(v);
        }
      } else if (body.starts_with("level")) {
        const std::size_t eq = body.find('=');
        if (eq != std::string_view::npos) {
          std::string_view v = body.substr(eq + 1);
          while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
          int value = 0;
          std::from_chars(v.data(), v.data() + v.size(), value);
          try {
            sentence_level = Level(value);
          } catch (const DomainError&) {
            throw ParseError("bad level comment", line_no);
          }
        }
      } else if (body.starts_with("text")) {
        has_text = true;
      }
      continue;
    }
    const std::string line = nfc(raw);
    auto cols = split(line, '\t');
    if (cols.size() < 5 || cols.size() > 10) {
      throw ParseError("expected 5 to 10 tab-separated columns, got " +
                           std::to_string(cols.size()),
                       line_no);
    }
    const std::string_view id_col = cols[0];
    const bool no_space = cols.size() == 10 && SpaceAfterNo(cols[9]);
    if (no_space) any_space_info = true;
    if (id_col.find('.') != std::string_view::npos) continue;  // empty node
    const std::size_t dash = id_col.find('-');
    if (dash != std::string_view::npos) {
      const std::size_t first = ParseIndex(id_col.substr(0, dash), line_no);
      const std::size_t last = ParseIndex(id_col.substr(dash + 1), line_no);
      if (first != tokens.size() + 1 || last <= first) {
        throw ParseError(first <= range_end && open_range
                             ? "overlapping range '" + std::string(id_col) + "'"
                             : "range '" + std::string(id_col) + "' out of sequence",
                         line_no, 1);
      }
      if (open_range && first <= range_end) {
        throw ParseError("overlapping range '" + std::string(id_col) + "'", line_no, 1);
      }
      words.push_back({std::string(cols[1]), first - 1, last - 1, !no_space});
      open_range = words.size() - 1;
      range_end = last;
      continue;
    }
    const std::size_t index = ParseIndex(id_col, line_no);
    if (index != tokens.size() + 1) {
      throw ParseError("non-consecutive token id " + std::to_string(index) + ", expected " +
                           std::to_string(tokens.size() + 1),
                       line_no, 1);
    }
    tokens.push_back({std::string(cols[1]), std::string(cols[2]), std::string(cols[4]),
                      !no_space, line_no});
    if (open_range && index <= range_end) {
      if (index == range_end) open_range.reset();
      continue;
    }
    open_range.reset();
    words.push_back({std::string(cols[1]), index - 1, index - 1, !no_space});
  }
  if (open_range) {
    throw ParseError("range extends past the end of the sentence", lines.size());
  }
  flush();
  return out;
}

// ---------------------------------------------------------------------------
// Tokens

std::string write_tokens(const SegmentedSentence& segmented) {
  std::string out;
  for (std::size_t i = 0; i < segmented.tokens.size(); ++i) {
    if (i) out += ' ';
    out += segmented.tokens[i].form;
  }
  out += '\n';
  return nfc(out);
}

std::string write_tokens(const std::vector<SegmentedSentence>& sentences) {
  std::string out;
  for (const auto& s : sentences) out += write_tokens(s);
  return out;
}

std::vector<std::vector<std::string>> read_tokens(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  for (std::string_view line : Lines(text)) {
    std::vector<std::string> tokens;
    const std::string normalized = nfc(line);
    for (std::string_view tok : split_whitespace(normalized)) tokens.emplace_back(tok);
    out.push_back(std::move(tokens));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace kseg
