#ifndef KSEG_GRANULARITY_H_
#define KSEG_GRANULARITY_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kseg/core_model.h"

namespace kseg {

// Half-open range of morpheme indices inside one eojeol.
struct MorphemeRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(const MorphemeRange& other) const {
    return begin <= other.begin && other.end <= end;
  }
  friend bool operator==(const MorphemeRange&, const MorphemeRange&) = default;
};

struct TokenGroup {
  std::size_t eojeol_index = 0;
  MorphemeRange range;
  std::string form;           // rendered token form
  std::string composite_tag;  // e.g. "NNG+XSN+VCP"

  friend bool operator==(const TokenGroup&, const TokenGroup&) = default;
};

struct SegmentedSentence {
  Level level{1};
  std::vector<TokenGroup> tokens;
  Sentence source;

  friend bool operator==(const SegmentedSentence&, const SegmentedSentence&) = default;
};

struct SegmentOptions {
  // Split only quotation-mark symbols at levels >= 2, as the Sejong treebank
  // does. Default splits every Symbol-class morpheme.
  bool quotes_only = false;
};

bool is_quotation_mark(std::string_view form);

// Level-k morpheme ranges of an eojeol: contiguous, ordered, exhaustive.
std::vector<MorphemeRange> partition_eojeol(const EojeolAnalysis& analysis,
                                            Level level,
                                            const SegmentOptions& options = {});

// Token forms for a partition of `analysis`. Surface slices are used where
// group boundaries can be located in the surface (exact prefix/suffix match,
// or a lone-jamo ending carried as the tail of a syllable); groups that
// cannot be located fall back to their canonical morpheme concatenation.
std::vector<std::string> render_groups(const EojeolAnalysis& analysis,
                                       const std::vector<MorphemeRange>& ranges);

// Renders one range against the partition {prefix, range, suffix}.
std::string render_group(const EojeolAnalysis& analysis, MorphemeRange range);

SegmentedSentence segment_sentence(const Sentence& sentence, Level level,
                                   const SegmentOptions& options = {});

// Eojeol indices whose Symbol morphemes occur strictly inside the eojeol, so
// that level >= 2 splits them into more than one non-symbol run.
std::vector<std::size_t> mid_symbol_eojeols(const Sentence& sentence);

struct MergedEojeol {
  std::string surface;
  std::string analysis;  // '+'-joined form/TAG, senses omitted

  friend bool operator==(const MergedEojeol&, const MergedEojeol&) = default;
};

// Regroups tokens by eojeol. Throws StructuralError on provenance gaps.
std::vector<MergedEojeol> merge_to_level1(const SegmentedSentence& segmented);
std::vector<MergedEojeol> level1_analyses(const Sentence& sentence);

// ---------------------------------------------------------------------------
// Phrase-structure trees.

struct TreeLeaf {
  TokenGroup token;
  // Full analysis of the eojeol the token came from; absent for leaves read
  // from level-k bracketed text.
  std::optional<EojeolAnalysis> eojeol;

  friend bool operator==(const TreeLeaf&, const TreeLeaf&) = default;
};

// A node is either a phrase (label + children) or a leaf. Preterminals are
// phrases whose only child is a leaf; their label is the composite tag.
struct SyntaxTree {
  std::string label;
  std::vector<SyntaxTree> children;
  std::optional<TreeLeaf> leaf;

  static SyntaxTree Phrase(std::string label, std::vector<SyntaxTree> children);
  static SyntaxTree Preterminal(TreeLeaf leaf);

  bool is_leaf() const { return leaf.has_value(); }
  bool is_preterminal() const {
    return !leaf && children.size() == 1 && children.front().is_leaf();
  }

  friend bool operator==(const SyntaxTree&, const SyntaxTree&) = default;
};

// "NP-SBJ" -> "NP"; labels starting with '-' are returned unchanged.
std::string phrase_category(const std::string& label);

std::vector<const TreeLeaf*> tree_leaves(const SyntaxTree& tree);
std::size_t leaf_count(const SyntaxTree& tree);
std::vector<std::string> preterminal_labels(const SyntaxTree& tree);

// Tree with preterminals and leaves erased (the phrase skeleton).
std::optional<SyntaxTree> phrase_skeleton(const SyntaxTree& tree);

// Splits every preterminal into the level-k preterminals of its token,
// attached as consecutive siblings under the original parent. Requires leaf
// provenance; cannot coarsen.
SyntaxTree convert_tree(const SyntaxTree& tree, Level level,
                        const SegmentOptions& options = {});

// convert_tree targeted at level 5; single-morpheme leaves without
// provenance are left alone.
SyntaxTree expand_tree_to_level5(const SyntaxTree& tree);

// Copies provenance from `reference` leaves onto `tree` leaves position by
// position. Leaf forms and composite tags must agree.
SyntaxTree attach_provenance(const SyntaxTree& tree, const SyntaxTree& reference);

// Level-1 sentence spelled by the leaves of a tree with provenance.
Sentence tree_sentence(const SyntaxTree& tree, std::string id = {});

}  // namespace kseg

#endif  // KSEG_GRANULARITY_H_
