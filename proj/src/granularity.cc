#include "kseg/granularity.h"

#include <algorithm>
#include <string_view>

#include "kseg/errors.h"
#include "kseg/text.h"

namespace kseg {

namespace {

bool Isolated(const Morpheme& m, Level level, const SegmentOptions& options) {
  const int k = level.value();
  if (k >= 5) return true;
  switch (classify_tag(m.tag)) {
    case TagClass::kSymbol:
      return k >= 2 && (!options.quotes_only || is_quotation_mark(m.form));
    case TagClass::kCaseMarker:
      return k >= 3;
    case TagClass::kVerbalEnding:
      return k >= 4;
    case TagClass::kLexical:
      return false;
  }
  return false;
}

std::u32string CanonicalForm(const EojeolAnalysis& analysis, MorphemeRange range) {
  std::u32string out;
  for (std::size_t i = range.begin; i < range.end; ++i) {
    out += to_u32(analysis.morphemes[i].form);
  }
  return out;
}

bool StartsWith(const std::u32string& s, const std::u32string& prefix) {
  return s.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), s.begin());
}

bool EndsWith(const std::u32string& s, const std::u32string& suffix) {
  return s.size() >= suffix.size() &&
         std::equal(suffix.rbegin(), suffix.rend(), s.rbegin());
}

// Syllable `ch` with tail `tail` added; nullopt when `ch` is not an open
// syllable.
std::optional<char32_t> WithTail(char32_t ch, int tail) {
  if (!is_syllable(ch)) return std::nullopt;
  JamoTriple t = decompose_syllable(ch);
  if (t.tail) return std::nullopt;
  t.tail = tail;
  return compose_syllable(t);
}

std::optional<int> LeadingEndingJamo(const std::u32string& form) {
  if (form.empty()) return std::nullopt;
  return ending_jamo_tail(form.front());
}

std::string ToString(const std::u32string& s) { return to_utf8(s); }

void CheckRange(const EojeolAnalysis& analysis, MorphemeRange range) {
  if (range.begin >= range.end || range.end > analysis.morphemes.size()) {
    throw DomainError("morpheme range out of bounds");
  }
}

}  // namespace

bool is_quotation_mark(std::string_view form) {
  static constexpr std::string_view kQuotes[] = {
      "\"", "'", "‘", "’", "“", "”",
      "「", "」", "『", "』", "`"};
  return std::find(std::begin(kQuotes), std::end(kQuotes), form) != std::end(kQuotes);
}

std::vector<MorphemeRange> partition_eojeol(const EojeolAnalysis& analysis,
                                            Level level,
                                            const SegmentOptions& options) {
  const std::size_t n = analysis.morphemes.size();
  if (n == 0) throw DomainError("eojeol without morphemes");
  if (level.value() == 1) return {{0, n}};

  std::vector<MorphemeRange> out;
  std::size_t run_start = 0;
  bool in_run = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (Isolated(analysis.morphemes[i], level, options)) {
      if (in_run) out.push_back({run_start, i});
      out.push_back({i, i + 1});
      in_run = false;
    } else if (!in_run) {
      run_start = i;
      in_run = true;
    }
  }
  if (in_run) out.push_back({run_start, n});
  return out;
}

std::vector<std::string> render_groups(const EojeolAnalysis& analysis,
                                       const std::vector<MorphemeRange>& ranges) {
  const std::size_t m = ranges.size();
  if (m == 0) return {};
  for (const auto& r : ranges) CheckRange(analysis, r);
  if (m == 1 && ranges.front().begin == 0 &&
      ranges.front().end == analysis.morphemes.size()) {
    return {analysis.surface};
  }

  std::vector<std::u32string> canon;
  canon.reserve(m);
  for (const auto& r : ranges) canon.push_back(CanonicalForm(analysis, r));

  std::vector<std::u32string> rendered(m);
  std::u32string rest = to_u32(analysis.surface);
  std::size_t lo = 0;
  std::size_t hi = m;

  // Peel groups off the front of the surface.
  while (hi - lo > 1) {
    const std::u32string& c = canon[lo];
    if (StartsWith(rest, c)) {
      rendered[lo] = c;
      rest.erase(0, c.size());
      ++lo;
      continue;
    }
    // Lone-jamo ending carried as the tail of the previous syllable:
    // 세계적이 + ㄴ against 세계적인.
    const auto tail = LeadingEndingJamo(canon[lo + 1]);
    const std::size_t len = c.size();
    if (tail && len > 0 && rest.size() >= len &&
        std::equal(c.begin(), c.end() - 1, rest.begin())) {
      const auto fused = WithTail(c.back(), *tail);
      if (fused && rest[len - 1] == *fused) {
        rendered[lo] = c;
        rest = std::u32string(1, canon[lo + 1].front()) + rest.substr(len);
        ++lo;
        continue;
      }
    }
    break;
  }

  // Then off the back.
  while (hi - lo > 1) {
    const std::u32string& c = canon[hi - 1];
    if (EndsWith(rest, c)) {
      rendered[hi - 1] = c;
      rest.resize(rest.size() - c.size());
      --hi;
      continue;
    }
    const auto tail = LeadingEndingJamo(c);
    if (tail) {
      const std::u32string after = c.substr(1);
      if (rest.size() > after.size() && EndsWith(rest, after)) {
        const std::size_t pos = rest.size() - after.size() - 1;
        if (is_syllable(rest[pos])) {
          JamoTriple t = decompose_syllable(rest[pos]);
          if (t.tail == *tail) {
            t.tail.reset();
            rendered[hi - 1] = c;
            rest.resize(pos);
            rest.push_back(compose_syllable(t));
            --hi;
            continue;
          }
        }
      }
    }
    break;
  }

  if (hi - lo == 1) {
    rendered[lo] = rest.empty() ? canon[lo] : rest;
  } else {
    for (std::size_t i = lo; i < hi; ++i) rendered[i] = canon[i];
  }

  std::vector<std::string> out;
  out.reserve(m);
  for (const auto& r : rendered) out.push_back(ToString(r));
  return out;
}

std::string render_group(const EojeolAnalysis& analysis, MorphemeRange range) {
  CheckRange(analysis, range);
  std::vector<MorphemeRange> parts;
  if (range.begin > 0) parts.push_back({0, range.begin});
  const std::size_t index = parts.size();
  parts.push_back(range);
  if (range.end < analysis.morphemes.size()) {
    parts.push_back({range.end, analysis.morphemes.size()});
  }
  return render_groups(analysis, parts)[index];
}

SegmentedSentence segment_sentence(const Sentence& sentence, Level level,
                                   const SegmentOptions& options) {
  SegmentedSentence out;
  out.level = level;
  out.source = sentence;
  for (std::size_t e = 0; e < sentence.eojeols.size(); ++e) {
    const EojeolAnalysis& eojeol = sentence.eojeols[e];
    const auto ranges = partition_eojeol(eojeol, level, options);
    const auto forms = render_groups(eojeol, ranges);
    for (std::size_t g = 0; g < ranges.size(); ++g) {
      const std::span<const Morpheme> group(
          eojeol.morphemes.data() + ranges[g].begin, ranges[g].size());
      out.tokens.push_back({e, ranges[g], forms[g], composite_tag(group)});
    }
  }
  return out;
}

std::vector<std::size_t> mid_symbol_eojeols(const Sentence& sentence) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < sentence.eojeols.size(); ++e) {
    const auto& ms = sentence.eojeols[e].morphemes;
    bool seen_word = false;
    bool pending_symbol = false;
    for (const auto& m : ms) {
      const bool symbol = classify_tag(m.tag) == TagClass::kSymbol;
      if (symbol) {
        if (seen_word) pending_symbol = true;
      } else {
        if (pending_symbol) {
          out.push_back(e);
          break;
        }
        seen_word = true;
      }
    }
  }
  return out;
}

std::vector<MergedEojeol> level1_analyses(const Sentence& sentence) {
  std::vector<MergedEojeol> out;
  out.reserve(sentence.eojeols.size());
  for (const auto& e : sentence.eojeols) {
    out.push_back({e.surface, format_analysis(e.morphemes)});
  }
  return out;
}

std::vector<MergedEojeol> merge_to_level1(const SegmentedSentence& segmented) {
  const auto& eojeols = segmented.source.eojeols;
  std::vector<std::size_t> covered(eojeols.size(), 0);
  for (const auto& token : segmented.tokens) {
    if (token.eojeol_index >= eojeols.size()) {
      throw StructuralError("token refers to missing eojeol " +
                            std::to_string(token.eojeol_index));
    }
    const auto& morphemes = eojeols[token.eojeol_index].morphemes;
    std::size_t& next = covered[token.eojeol_index];
    if (token.range.begin != next || token.range.end <= token.range.begin ||
        token.range.end > morphemes.size()) {
      throw StructuralError("provenance gap in eojeol " +
                            std::to_string(token.eojeol_index));
    }
    const std::span<const Morpheme> group(morphemes.data() + token.range.begin,
                                          token.range.size());
    if (composite_tag(group) != token.composite_tag) {
      throw StructuralError("token tag " + token.composite_tag +
                            " disagrees with its morphemes");
    }
    next = token.range.end;
  }
  for (std::size_t e = 0; e < eojeols.size(); ++e) {
    if (covered[e] != eojeols[e].morphemes.size()) {
      throw StructuralError("eojeol " + std::to_string(e) + " not fully covered");
    }
  }
  return level1_analyses(segmented.source);
}

// ---------------------------------------------------------------------------

SyntaxTree SyntaxTree::Phrase(std::string label, std::vector<SyntaxTree> children) {
  SyntaxTree t;
  t.label = std::move(label);
  t.children = std::move(children);
  return t;
}

SyntaxTree SyntaxTree::Preterminal(TreeLeaf leaf) {
  SyntaxTree node;
  node.leaf = std::move(leaf);
  SyntaxTree pre;
  pre.label = node.leaf->token.composite_tag;
  pre.children.push_back(std::move(node));
  return pre;
}

std::string phrase_category(const std::string& label) {
  const std::size_t dash = label.find('-');
  if (dash == std::string::npos || dash == 0) return label;
  return label.substr(0, dash);
}

namespace {

void CollectLeaves(const SyntaxTree& t, std::vector<const TreeLeaf*>& out) {
  if (t.leaf) {
    out.push_back(&*t.leaf);
    return;
  }
  for (const auto& c : t.children) CollectLeaves(c, out);
}

void CollectPreterminals(const SyntaxTree& t, std::vector<std::string>& out) {
  if (t.is_preterminal()) {
    out.push_back(t.label);
    return;
  }
  for (const auto& c : t.children) CollectPreterminals(c, out);
}

std::vector<SyntaxTree> SplitPreterminal(const SyntaxTree& pre, Level level,
                                         const SegmentOptions& options) {
  const TreeLeaf& leaf = *pre.children.front().leaf;
  if (!leaf.eojeol) {
    if (leaf.token.composite_tag.find('+') == std::string::npos) return {pre};
    throw StructuralError("leaf '" + leaf.token.form + "' has no stored analysis");
  }
  const EojeolAnalysis& eojeol = *leaf.eojeol;
  const MorphemeRange span = leaf.token.range;
  if (span.end > eojeol.morphemes.size() || span.begin >= span.end) {
    throw StructuralError("leaf '" + leaf.token.form + "' has an invalid morpheme range");
  }
  const auto ranges = partition_eojeol(eojeol, level, options);
  const auto forms = render_groups(eojeol, ranges);
  std::vector<SyntaxTree> out;
  for (std::size_t g = 0; g < ranges.size(); ++g) {
    const MorphemeRange& r = ranges[g];
    if (r.end <= span.begin || r.begin >= span.end) continue;
    if (!span.contains(r)) {
      throw StructuralError("cannot coarsen leaf '" + leaf.token.form + "' to level " +
                            std::to_string(level.value()));
    }
    const std::span<const Morpheme> group(eojeol.morphemes.data() + r.begin, r.size());
    TreeLeaf piece;
    piece.token = {leaf.token.eojeol_index, r, forms[g], composite_tag(group)};
    piece.eojeol = eojeol;
    out.push_back(SyntaxTree::Preterminal(std::move(piece)));
  }
  return out;
}

SyntaxTree Convert(const SyntaxTree& node, Level level, const SegmentOptions& options) {
  if (node.is_leaf()) throw StructuralError("bare leaf outside a preterminal");
  if (node.is_preterminal()) {
    auto parts = SplitPreterminal(node, level, options);
    if (parts.size() != 1) {
      throw StructuralError("a root preterminal cannot be split into siblings");
    }
    return std::move(parts.front());
  }
  SyntaxTree out;
  out.label = node.label;
  for (const auto& child : node.children) {
    if (child.is_preterminal()) {
      for (auto& p : SplitPreterminal(child, level, options)) {
        out.children.push_back(std::move(p));
      }
    } else {
      out.children.push_back(Convert(child, level, options));
    }
  }
  return out;
}

void AttachProvenance(SyntaxTree& node, const std::vector<const TreeLeaf*>& ref,
                      std::size_t& next) {
  if (node.leaf) {
    const TreeLeaf& source = *ref[next++];
    if (source.token.form != node.leaf->token.form) {
      throw AlignmentError("leaf '" + node.leaf->token.form + "' does not match '" +
                           source.token.form + "'");
    }
    node.leaf->token.eojeol_index = source.token.eojeol_index;
    node.leaf->token.range = source.token.range;
    node.leaf->token.composite_tag = source.token.composite_tag;
    node.leaf->eojeol = source.eojeol;
    return;
  }
  for (auto& c : node.children) AttachProvenance(c, ref, next);
}

}  // namespace

std::vector<const TreeLeaf*> tree_leaves(const SyntaxTree& tree) {
  std::vector<const TreeLeaf*> out;
  CollectLeaves(tree, out);
  return out;
}

std::size_t leaf_count(const SyntaxTree& tree) { return tree_leaves(tree).size(); }

std::vector<std::string> preterminal_labels(const SyntaxTree& tree) {
  std::vector<std::string> out;
  CollectPreterminals(tree, out);
  return out;
}

std::optional<SyntaxTree> phrase_skeleton(const SyntaxTree& tree) {
  if (tree.is_leaf() || tree.is_preterminal()) return std::nullopt;
  SyntaxTree out;
  out.label = tree.label;
  for (const auto& c : tree.children) {
    if (auto s = phrase_skeleton(c)) out.children.push_back(std::move(*s));
  }
  return out;
}

SyntaxTree convert_tree(const SyntaxTree& tree, Level level, const SegmentOptions& options) {
  return Convert(tree, level, options);
}

SyntaxTree expand_tree_to_level5(const SyntaxTree& tree) {
  return Convert(tree, Level(5), {});
}

SyntaxTree attach_provenance(const SyntaxTree& tree, const SyntaxTree& reference) {
  const auto ref = tree_leaves(reference);
  if (ref.size() != leaf_count(tree)) {
    throw AlignmentError("leaf counts differ: " + std::to_string(leaf_count(tree)) +
                         " vs " + std::to_string(ref.size()));
  }
  SyntaxTree out = tree;
  std::size_t next = 0;
  AttachProvenance(out, ref, next);
  return out;
}

Sentence tree_sentence(const SyntaxTree& tree, std::string id) {
  Sentence out;
  out.id = std::move(id);
  std::optional<std::size_t> last;
  for (const TreeLeaf* leaf : tree_leaves(tree)) {
    if (!leaf->eojeol) {
      throw StructuralError("leaf '" + leaf->token.form + "' has no stored analysis");
    }
    if (last && *last == leaf->token.eojeol_index) continue;
    last = leaf->token.eojeol_index;
    out.eojeols.push_back(*leaf->eojeol);
  }
  return out;
}

}  // namespace kseg
