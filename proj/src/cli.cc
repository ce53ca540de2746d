#include "kseg/cli.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "kseg/corpus_io.h"
#include "kseg/errors.h"
#include "kseg/granularity.h"
#include "kseg/metrics.h"
#include "kseg/tagger.h"
#include "kseg/text.h"

namespace kseg::cli {

namespace {

// Invalid flag combinations detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kInputFormats = {"sejong-morph", "sejong-tree", "conllu",
                                                "bracketed"};
const std::vector<std::string> kOutputFormats = {"sejong-morph", "sejong-tree", "conllu",
                                                 "tokens", "bracketed"};

bool IsTreeFormat(const std::string& f) { return f == "sejong-tree" || f == "bracketed"; }

std::string Fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::vector<Sentence> TreeSentences(const std::vector<SyntaxTree>& trees) {
  std::vector<Sentence> out;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    out.push_back(tree_sentence(trees[i], std::to_string(i + 1)));
  }
  return out;
}

std::vector<Sentence> LoadSentences(const std::string& path, const std::string& format) {
  const std::string text = read_file(path);
  if (format == "sejong-morph") return read_morph_corpus(text);
  if (IsTreeFormat(format)) return TreeSentences(read_treebank(text));
  if (format == "conllu") {
    std::vector<Sentence> out;
    for (auto& s : read_conllu(text)) out.push_back(std::move(s.source));
    return out;
  }
  throw UsageError("unsupported input format '" + format + "'");
}

SyntaxTree ConvertTree(const SyntaxTree& tree, Level level, const SegmentOptions& options) {
  if (level.value() == 5) return expand_tree_to_level5(tree);
  return convert_tree(tree, level, options);
}

std::vector<Level> ParseLevels(const std::string& text) {
  auto one = [&](std::string_view s) {
    if (s.size() != 1 || s[0] < '1' || s[0] > '5') {
      throw UsageError("bad level '" + std::string(s) + "' (expected 1-5, k..m or a list)");
    }
    return s[0] - '0';
  };
  std::vector<Level> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = one(std::string_view(text).substr(0, dots));
    const int hi = one(std::string_view(text).substr(dots + 2));
    if (lo > hi) throw UsageError("empty level range '" + text + "'");
    for (int k = lo; k <= hi; ++k) out.emplace_back(k);
    return out;
  }
  for (std::string_view part : split(text, ',')) out.emplace_back(one(part));
  return out;
}

// Gold tree at the level whose leaves match `pred`, or nullopt.
std::optional<SyntaxTree> MatchingGold(const SyntaxTree& gold, const SyntaxTree& pred) {
  const auto pred_leaves = tree_leaves(pred);
  for (const Level& level : all_levels()) {
    SyntaxTree candidate = convert_tree(gold, level);
    const auto leaves = tree_leaves(candidate);
    if (leaves.size() != pred_leaves.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < leaves.size() && same; ++i) {
      same = leaves[i]->token.form == pred_leaves[i]->token.form &&
             leaves[i]->token.composite_tag == pred_leaves[i]->token.composite_tag;
    }
    if (same) return candidate;
  }
  return std::nullopt;
}

bool HasProvenance(const SyntaxTree& tree) {
  for (const TreeLeaf* leaf : tree_leaves(tree)) {
    if (!leaf->eojeol) return false;
  }
  return true;
}

struct Options {
  std::string input;
  std::string second;
  std::string output;
  std::string from = "sejong-morph";
  std::string to = "conllu";
  std::string levels;
  int level = 0;
  bool quotes_only = false;
  std::string table_format = "table";
  double fraction = 0.9;
  long seed = 0;
  std::string train_out;
  std::string eval_out;
  double smoothing = 0.1;
  std::string model;
  std::string pred_format = "conllu";
  bool gold_segmentation = false;
  bool unlabeled = false;
  bool no_root = false;
  bool strip_functions = false;
  bool level5 = false;
  int max_n = 4;
};

// Notes eojeols that level >= 2 splits into several non-symbol runs.
void ReportInnerSymbols(const std::vector<Sentence>& sentences, const Options& o,
                        std::ostream& err) {
  if (o.level < 2 || o.quotes_only) return;
  std::size_t count = 0;
  for (const auto& s : sentences) count += mid_symbol_eojeols(s).size();
  if (count > 0) {
    err << "kseg: note: " << count
        << " eojeol(s) with inner symbols were split into several runs\n";
  }
}

int Convert(const Options& o, std::ostream& out, std::ostream& err) {
  const Level level(o.level);
  SegmentOptions seg;
  seg.quotes_only = o.quotes_only;
  if (IsTreeFormat(o.to)) {
    if (!IsTreeFormat(o.from)) throw UsageError("--to " + o.to + " needs tree input");
    std::vector<SyntaxTree> trees;
    std::vector<Sentence> sentences;
    for (const auto& t : read_treebank(read_file(o.input))) {
      trees.push_back(ConvertTree(t, level, seg));
      if (HasProvenance(t)) sentences.push_back(tree_sentence(t));
    }
    const auto style = o.to == "sejong-tree" ? BracketStyle::kSejong : BracketStyle::kPenn;
    Emit(o.output, write_treebank(trees, style), out);
    ReportInnerSymbols(sentences, o, err);
    return kOk;
  }
  const auto sentences = LoadSentences(o.input, o.from);
  if (o.to == "sejong-morph") {
    Emit(o.output, write_morph_corpus(sentences), out);
    return kOk;
  }
  std::vector<SegmentedSentence> segmented;
  for (const auto& s : sentences) segmented.push_back(segment_sentence(s, level, seg));
  Emit(o.output, o.to == "tokens" ? write_tokens(segmented) : write_conllu(segmented), out);
  ReportInnerSymbols(sentences, o, err);
  return kOk;
}

int Stats(const Options& o, std::ostream& out) {
  const auto levels = ParseLevels(o.levels);
  SegmentOptions seg;
  seg.quotes_only = o.quotes_only;
  std::vector<StatsRow> rows;
  if (IsTreeFormat(o.from)) {
    const auto trees = read_treebank(read_file(o.input));
    for (const Level& k : levels) rows.push_back(corpus_stats(trees, k));
  } else {
    const auto sentences = LoadSentences(o.input, o.from);
    for (const Level& k : levels) rows.push_back(corpus_stats(sentences, k, seg));
  }
  Emit(o.output, o.table_format == "kv" ? format_stats_kv(rows) : format_stats_table(rows),
       out);
  return kOk;
}

int Split(const Options& o, std::ostream&) {
  if (!(o.fraction > 0.0 && o.fraction < 1.0)) {
    throw UsageError("--fraction must lie strictly between 0 and 1");
  }
  if (o.seed < 0) throw UsageError("--seed must be non-negative");
  const double eval_share = 1.0 - o.fraction;
  auto is_eval = [&](std::size_t i) {
    const double at = static_cast<double>(i + static_cast<std::size_t>(o.seed));
    return std::floor((at + 1) * eval_share + 1e-9) > std::floor(at * eval_share + 1e-9);
  };
  const std::string text = read_file(o.input);
  if (IsTreeFormat(o.from)) {
    std::vector<SyntaxTree> train, eval;
    const auto trees = read_treebank(text);
    for (std::size_t i = 0; i < trees.size(); ++i) {
      (is_eval(i) ? eval : train).push_back(trees[i]);
    }
    const auto style = o.from == "sejong-tree" ? BracketStyle::kSejong : BracketStyle::kPenn;
    write_file(o.train_out, write_treebank(train, style));
    write_file(o.eval_out, write_treebank(eval, style));
    return kOk;
  }
  if (o.from != "sejong-morph") throw UsageError("split reads sejong-morph or tree input");
  std::vector<Sentence> train, eval;
  const auto sentences = read_morph_corpus(text);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    (is_eval(i) ? eval : train).push_back(sentences[i]);
  }
  write_file(o.train_out, write_morph_corpus(train));
  write_file(o.eval_out, write_morph_corpus(eval));
  return kOk;
}

int Train(const Options& o, std::ostream& out) {
  const auto model = train(LoadSentences(o.input, o.from), Level(o.level), o.smoothing);
  Emit(o.output, model.serialize(), out);
  return kOk;
}

int Tag(const Options& o, std::ostream& out) {
  const auto model = TaggerModel::deserialize(read_file(o.model));
  std::vector<SegmentedSentence> tagged;
  for (const auto& tokens : read_tokens(read_file(o.input))) {
    if (tokens.empty()) continue;
    tagged.push_back(analyze(model, tokens, std::to_string(tagged.size() + 1)));
  }
  std::string text;
  if (o.to == "tokens") {
    text = write_tokens(tagged);
  } else if (o.to == "sejong-morph") {
    std::vector<Sentence> sentences;
    for (const auto& s : tagged) sentences.push_back(s.source);
    text = write_morph_corpus(sentences);
  } else if (o.to == "conllu") {
    text = write_conllu(tagged);
  } else {
    throw UsageError("tag writes conllu, tokens or sejong-morph");
  }
  Emit(o.output, text, out);
  return kOk;
}

int EvalSeg(const Options& o, std::ostream& out) {
  const auto gold = read_conllu(read_file(o.input));
  const auto pred = read_conllu(read_file(o.second));
  Emit(o.output, format_prf_kv("seg.", segmentation_prf(gold, pred)), out);
  return kOk;
}

std::string AccuracyKv(const Accuracy& acc) {
  return "pos.correct=" + std::to_string(acc.correct) + "\npos.total=" +
         std::to_string(acc.total) + "\npos.accuracy=" + Fixed(100.0 * acc.value(), 2) +
         "\n";
}

int EvalPos(const Options& o, std::ostream& out) {
  const auto gold = read_morph_corpus(read_file(o.input));
  if (!o.model.empty()) {
    if (!o.second.empty()) throw UsageError("give either a prediction file or --model");
    const auto model = TaggerModel::deserialize(read_file(o.model));
    std::vector<std::vector<std::string>> raw;
    for (const auto& s : gold) {
      std::vector<std::string> surfaces;
      for (const auto& e : s.eojeols) surfaces.push_back(e.surface);
      raw.push_back(std::move(surfaces));
    }
    const auto report = evaluate_pipeline(
        model, raw, gold,
        o.gold_segmentation ? SegmentationSource::kGold : SegmentationSource::kModel);
    Emit(o.output, format_prf_kv("seg.", report.segmentation) + AccuracyKv(report.pos), out);
    return kOk;
  }
  if (o.second.empty()) throw UsageError("missing prediction file or --model");
  if (o.gold_segmentation) throw UsageError("--gold-segmentation needs --model");
  std::vector<std::vector<MergedEojeol>> merged;
  const std::string text = read_file(o.second);
  if (o.pred_format == "conllu") {
    for (const auto& s : read_conllu(text)) merged.push_back(merge_to_level1(s));
  } else {
    for (const auto& s : read_morph_corpus(text)) merged.push_back(level1_analyses(s));
  }
  Emit(o.output, AccuracyKv(pos_accuracy(gold, merged)), out);
  return kOk;
}

int EvalParse(const Options& o, std::ostream& out) {
  auto gold = read_treebank(read_file(o.input));
  auto pred = read_treebank(read_file(o.second));
  if (gold.size() != pred.size()) {
    throw AlignmentError("tree counts differ: " + std::to_string(gold.size()) + " vs " +
                         std::to_string(pred.size()));
  }
  if (o.level5) {
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (!HasProvenance(pred[i])) {
        if (const auto ref = MatchingGold(gold[i], pred[i])) {
          pred[i] = attach_provenance(pred[i], *ref);
        }
      }
      pred[i] = expand_tree_to_level5(pred[i]);
      gold[i] = expand_tree_to_level5(gold[i]);
    }
  }
  BracketConfig config;
  config.labeled = !o.unlabeled;
  config.include_root = !o.no_root;
  config.strip_functional_tags = o.strip_functions;
  const auto report = bracket_prf(gold, pred, config);
  std::string text = "parse.sentences=" + std::to_string(report.sentences) +
                     "\nparse.error_sentences=" + std::to_string(report.error_sentences) +
                     "\n" + format_prf_kv("parse.", report.prf);
  Emit(o.output, text, out);
  return kOk;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  for (std::string_view line : split(text, '\n')) out.emplace_back(line);
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

int EvalBleu(const Options& o, std::ostream& out) {
  const double score = bleu(Lines(read_file(o.input)), Lines(read_file(o.second)), o.max_n);
  Emit(o.output, "bleu=" + Fixed(score, 2) + "\n", out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Korean segmentation granularity toolkit", "kseg"};
  app.require_subcommand(1);
  Options o;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", o.output, "Output file (default: standard output)");
  };

  auto* convert = app.add_subcommand("convert", "Re-segment a corpus at one granularity level");
  convert->add_option("--level", o.level, "Target level")->required()->check(CLI::Range(1, 5));
  convert->add_option("--from", o.from, "Input format")
      ->check(CLI::IsMember(kInputFormats))
      ->capture_default_str();
  convert->add_option("--to", o.to, "Output format")
      ->check(CLI::IsMember(kOutputFormats))
      ->capture_default_str();
  convert->add_flag("--quotes-only", o.quotes_only,
                    "Split only quotation marks among symbols at levels 2-5");
  convert->add_option("input", o.input, "Input file")->required();
  convert->add_option("output", o.output, "Output file (default: standard output)");
  convert->add_option("-o", o.output, "Output file (same as the positional argument)");

  auto* stats = app.add_subcommand("stats", "Token, MCW and immediate-NT counts per level");
  stats->add_option("--level", o.levels, "Levels: k, k..m or a comma list")->required();
  stats->add_option("--from", o.from, "Input format")
      ->check(CLI::IsMember(kInputFormats))
      ->capture_default_str();
  stats->add_option("--format", o.table_format, "table or kv")
      ->check(CLI::IsMember({"table", "kv"}))
      ->capture_default_str();
  stats->add_flag("--quotes-only", o.quotes_only,
                  "Split only quotation marks among symbols at levels 2-5");
  stats->add_option("input", o.input, "Input file")->required();
  add_output(stats);

  auto* split_cmd =
      app.add_subcommand("split", "Deterministic train/evaluation split preserving order");
  split_cmd->add_option("--fraction", o.fraction, "Training share in (0,1)")
      ->capture_default_str();
  split_cmd->add_option("--seed", o.seed, "Offset of the evaluation stride")
      ->capture_default_str();
  split_cmd->add_option("--from", o.from, "sejong-morph, sejong-tree or bracketed")
      ->check(CLI::IsMember({"sejong-morph", "sejong-tree", "bracketed"}))
      ->capture_default_str();
  split_cmd->add_option("--train", o.train_out, "Training output file")->required();
  split_cmd->add_option("--eval", o.eval_out, "Evaluation output file")->required();
  split_cmd->add_option("input", o.input, "Input file")->required();

  auto* train_cmd = app.add_subcommand("train", "Train the dictionary + HMM tagger");
  train_cmd->add_option("--level", o.level, "Token level")->required()->check(CLI::Range(1, 5));
  train_cmd->add_option("--smoothing", o.smoothing, "Additive smoothing constant")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--from", o.from, "Input format")
      ->check(CLI::IsMember(kInputFormats))
      ->capture_default_str();
  train_cmd->add_option("input", o.input, "Training corpus")->required();
  add_output(train_cmd);

  auto* tag = app.add_subcommand("tag", "Segment and tag raw text, one sentence per line");
  tag->add_option("--model", o.model, "Model file")->required();
  tag->add_option("--to", o.to, "conllu, tokens or sejong-morph")
      ->check(CLI::IsMember({"conllu", "tokens", "sejong-morph"}))
      ->capture_default_str();
  tag->add_option("input", o.input, "Raw text file")->required();
  add_output(tag);

  auto* eval_seg = app.add_subcommand("eval-seg", "Segmentation P/R/F1 of CoNLL-U files");
  eval_seg->add_option("gold", o.input, "Gold CoNLL-U")->required();
  eval_seg->add_option("pred", o.second, "Predicted CoNLL-U")->required();
  add_output(eval_seg);

  auto* eval_pos = app.add_subcommand("eval-pos", "Eojeol-level POS accuracy");
  eval_pos->add_option("gold", o.input, "Gold sejong-morph corpus")->required();
  eval_pos->add_option("pred", o.second, "Predictions (omit with --model)");
  eval_pos->add_option("--pred-format", o.pred_format, "conllu or sejong-morph")
      ->check(CLI::IsMember({"conllu", "sejong-morph"}))
      ->capture_default_str();
  eval_pos->add_option("--model", o.model, "Tag the gold surfaces with this model");
  eval_pos->add_flag("--gold-segmentation", o.gold_segmentation,
                     "With --model: tag gold level-k tokens instead of segmenting");
  add_output(eval_pos);

  auto* eval_parse = app.add_subcommand("eval-parse", "Labeled bracket P/R/F1");
  eval_parse->add_option("gold", o.input, "Gold trees")->required();
  eval_parse->add_option("pred", o.second, "Predicted trees")->required();
  eval_parse->add_flag("--unlabeled", o.unlabeled, "Ignore phrase labels");
  eval_parse->add_flag("--no-root", o.no_root, "Exclude the root bracket");
  eval_parse->add_flag("--strip-functions", o.strip_functions,
                       "Compare labels without function tags (NP-SBJ -> NP)");
  eval_parse->add_flag("--level5", o.level5,
                       "Expand both sides to level 5 first; gold provenance is "
                       "grafted onto predicted leaves");
  add_output(eval_parse);

  auto* eval_bleu = app.add_subcommand("eval-bleu", "Corpus BLEU, one sentence per line");
  eval_bleu->add_option("reference", o.input, "Reference file")->required();
  eval_bleu->add_option("hypothesis", o.second, "Hypothesis file")->required();
  eval_bleu->add_option("--max-n", o.max_n, "Largest n-gram order")
      ->capture_default_str()
      ->check(CLI::Range(1, 9));
  add_output(eval_bleu);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    if (const auto nl = message.find('\n'); nl != std::string::npos) message.resize(nl);
    err << "kseg: " << message << "\n";
    return kUsage;
  }

  try {
    if (convert->parsed()) return Convert(o, out, err);
    if (stats->parsed()) return Stats(o, out);
    if (split_cmd->parsed()) return Split(o, out);
    if (train_cmd->parsed()) return Train(o, out);
    if (tag->parsed()) return Tag(o, out);
    if (eval_seg->parsed()) return EvalSeg(o, out);
    if (eval_pos->parsed()) return EvalPos(o, out);
    if (eval_parse->parsed()) return EvalParse(o, out);
    if (eval_bleu->parsed()) return EvalBleu(o, out);
  } catch (const UsageError& e) {
    err << "kseg: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::string message = e.what();
    for (char& c : message) {
      if (c == '\n') c = ' ';
    }
    err << "kseg: " << message << "\n";
    return kDataError;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace kseg::cli
