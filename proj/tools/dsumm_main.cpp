// dsumm: disaster-tweet summarization pipeline CLI.
//
// Subcommands cover each stage (extract-keyphrases, train, summarize,
// evaluate, eval-keyphrases) plus an end-to-end `pipeline`. Every command
// writes a machine-readable JSON report (to --out or stdout) and short
// human-readable notes to stderr; every flag can also be set through a
// DSUMM_* environment variable.

#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsumm/corpus.hpp"
#include "dsumm/drake.hpp"
#include "dsumm/embeddings.hpp"
#include "dsumm/metrics.hpp"
#include "dsumm/ontology.hpp"
#include "dsumm/pipeline.hpp"
#include "dsumm/preprocess.hpp"
#include "dsumm/salience.hpp"
#include "dsumm/summarizer.hpp"

namespace {

using nlohmann::json;

std::string env_name(const std::string& long_flag) {
  std::string name = "DSUMM_";
  for (char c : long_flag) {
    name += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return name;
}

std::string long_name(const std::string& flag_spec) {
  const auto pos = flag_spec.rfind("--");
  std::string name = pos == std::string::npos ? flag_spec : flag_spec.substr(pos + 2);
  const auto comma = name.find(',');
  if (comma != std::string::npos) name = name.substr(0, comma);
  while (!name.empty() && name.front() == '-') name.erase(name.begin());
  return name;
}

// add_option wrapper that derives the env override from the long flag name.
template <typename App, typename... Args>
CLI::Option* opt(App* sub, const std::string& flag, Args&&... args) {
  CLI::Option* o = sub->add_option(flag, std::forward<Args>(args)...);
  o->envname(env_name(long_name(flag)));
  return o;
}

void emit(const json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open \"" + out_path + "\" for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing \"" + out_path + "\"");
  std::cerr << "wrote " << out_path << "\n";
}

json keyphrase_json(const dsumm::KeyPhraseResult& r) {
  json rec;
  rec["tweet_id"] = r.tweet_id;
  rec["none_found"] = r.none_found;
  if (!r.none_found) {
    rec["phrase"] = r.phrase.words;
    rec["span"] = {{"start", r.phrase.span.start}, {"end", r.phrase.span.end}};
    rec["score"] = r.phrase.score;
  }
  return rec;
}

json rouge_json(const dsumm::RougeReport& r) {
  auto score = [](const dsumm::RougeScore& s) {
    return json{{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
  };
  return json{{"rouge1", score(r.rouge1)}, {"rouge2", score(r.rouge2)}, {"rougeL", score(r.rougeL)}};
}

json summary_json(const dsumm::PipelineResult& result) {
  json entries = json::array();
  std::size_t rank = 1;
  for (const dsumm::SummaryEntry& e : result.summary.entries) {
    const dsumm::Tweet* t = result.corpus.find(e.tweet_id);
    entries.push_back({{"rank", rank++},
                       {"tweet_id", e.tweet_id},
                       {"salience", e.salience},
                       {"text", t != nullptr ? t->raw_text : std::string()}});
  }
  return entries;
}

void write_spans(const std::vector<dsumm::KeyPhraseResult>& results, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open \"" + path + "\" for writing");
  for (const dsumm::KeyPhraseResult& r : results) {
    json rec;
    rec["tweet_id"] = r.tweet_id;
    if (r.none_found) {
      rec["none_found"] = true;
    } else {
      rec["start"] = r.phrase.span.start;
      rec["end"] = r.phrase.span.end;
    }
    out << rec.dump() << "\n";
  }
  if (!out) throw std::runtime_error("failed writing \"" + path + "\"");
  std::cerr << "wrote " << path << "\n";
}

std::vector<std::string> summary_ids_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open summary file \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("summary file \"" + path + "\" is not valid JSON: " + e.what());
  }
  const json* arr = nullptr;
  if (j.is_array()) {
    arr = &j;
  } else if (j.is_object() && j.contains("summary") && j["summary"].is_array()) {
    arr = &j["summary"];
  } else {
    throw std::runtime_error("summary file \"" + path +
                             "\" must be a JSON array or an object with a \"summary\" array");
  }
  std::vector<std::string> ids;
  for (const json& item : *arr) {
    if (item.is_string()) {
      ids.push_back(item.get<std::string>());
    } else if (item.is_object() && item.contains("tweet_id") && item["tweet_id"].is_string()) {
      ids.push_back(item["tweet_id"].get<std::string>());
    } else {
      throw std::runtime_error("summary file \"" + path +
                               "\": entries must be ids or objects with a tweet_id");
    }
  }
  return ids;
}

std::map<std::string, dsumm::TokenSpan> span_map(const std::vector<dsumm::KeyPhraseAnnotation>& v) {
  std::map<std::string, dsumm::TokenSpan> m;
  for (const dsumm::KeyPhraseAnnotation& a : v) m[a.tweet_id] = a.span;
  return m;
}

void add_corpus_opts(CLI::App* sub, dsumm::PipelineConfig& cfg) {
  opt(sub, "--corpus", cfg.corpus_path, "Corpus JSONL file (one {id, text[, label]} per line)")
      ->required();
  opt(sub, "--max-tokens", cfg.max_tokens, "Token cap per tweet")->capture_default_str();
}

void add_keyphrase_opts(CLI::App* sub, dsumm::PipelineConfig& cfg, bool& rake,
                        bool& corpus_stats) {
  opt(sub, "--ontology", cfg.ontology_path, "Domain lexicon file, one term per line");
  opt(sub, "--boost", cfg.boost, "Score multiplier for lexicon words")->capture_default_str();
  sub->add_flag("--rake", rake, "Ignore the ontology (plain RAKE scoring)");
  sub->add_flag("--corpus-stats", corpus_stats,
                "Pool word statistics over the whole corpus instead of per tweet");
}

void add_embedding_opts(CLI::App* sub, dsumm::PipelineConfig& cfg) {
  opt(sub, "--word-vectors", cfg.word_vectors_path, "Word-vector file for key-phrase embeddings");
  opt(sub, "--tweet-vectors", cfg.tweet_vectors_path, "Precomputed tweet-vector file keyed by id");
  opt(sub, "--hash-dim", cfg.hash_dim, "Dim of the fallback hash embeddings")
      ->capture_default_str();
  opt(sub, "--seed", cfg.seed, "Seed for hash embeddings and model init")->capture_default_str();
  sub->add_flag("--similarity-on-concat", cfg.similarity_on_concat,
                "Measure summary diversity on the concatenated features");
}

void add_model_opts(CLI::App* sub, dsumm::PipelineConfig& cfg) {
  opt(sub, "--hidden-dim", cfg.hidden_dim, "Hidden layer width")->capture_default_str();
  opt(sub, "--dropout", cfg.dropout_p, "Training dropout probability")->capture_default_str();
}

void add_train_opts(CLI::App* sub, dsumm::PipelineConfig& cfg, std::string& loss_name) {
  opt(sub, "--epochs", cfg.train.epochs, "Training epochs")->capture_default_str();
  opt(sub, "--batch", cfg.train.batch_size, "Mini-batch size")->capture_default_str();
  opt(sub, "--lr", cfg.train.learning_rate, "Adam learning rate")->capture_default_str();
  opt(sub, "--beta1", cfg.train.beta1, "Adam first-moment decay")->capture_default_str();
  opt(sub, "--beta2", cfg.train.beta2, "Adam second-moment decay")->capture_default_str();
  opt(sub, "--epsilon", cfg.train.epsilon, "Adam denominator floor")->capture_default_str();
  opt(sub, "--loss", loss_name, "Training loss: bce or mse")->capture_default_str();
}

void add_summary_opts(CLI::App* sub, dsumm::PipelineConfig& cfg, std::string& aggregate_name) {
  opt(sub, "-L,--length", cfg.summary.length, "Summary length in tweets")->capture_default_str();
  opt(sub, "--lambda-salience", cfg.summary.lambda_salience,
      "Minimum salience for summary candidacy")
      ->capture_default_str();
  opt(sub, "--lambda-similarity", cfg.summary.lambda_similarity,
      "Maximum similarity to the running summary")
      ->capture_default_str();
  opt(sub, "--aggregate", aggregate_name, "Similarity aggregation: max or mean")
      ->capture_default_str();
}

void finalize_enums(dsumm::PipelineConfig& cfg, const std::string& loss_name,
                    const std::string& aggregate_name, bool rake, bool corpus_stats) {
  cfg.train.loss = dsumm::loss_kind_from_string(loss_name);
  cfg.summary.aggregate = dsumm::sim_aggregate_from_string(aggregate_name);
  if (rake) cfg.ontology_path.clear();
  cfg.stats_scope = corpus_stats ? dsumm::StatsScope::Corpus : dsumm::StatsScope::PerTweet;
  cfg.train.seed = cfg.seed;
}

int run(int argc, char** argv) {
  CLI::App app{"Key-phrase-guided extractive summarization of disaster tweets"};
  app.require_subcommand(1);

  // Each subcommand owns its config so flag storage never crosses commands.
  struct ExtractArgs {
    dsumm::PipelineConfig cfg;
    bool rake = false;
    bool corpus_stats = false;
    std::string spans_out;
  } ex;
  CLI::App* extract = app.add_subcommand("extract-keyphrases",
                                         "Score candidate phrases and pick each tweet's key-phrase");
  add_corpus_opts(extract, ex.cfg);
  add_keyphrase_opts(extract, ex.cfg, ex.rake, ex.corpus_stats);
  opt(extract, "--out", ex.cfg.out_path, "Report path (default stdout)");
  opt(extract, "--spans-out", ex.spans_out, "Also write predicted spans as annotation JSONL");
  extract->callback([&] {
    ex.cfg.stats_scope = ex.corpus_stats ? dsumm::StatsScope::Corpus : dsumm::StatsScope::PerTweet;
    if (ex.rake) ex.cfg.ontology_path.clear();
    const dsumm::LexiconSet lex = dsumm::LexiconSet::english();
    dsumm::Corpus corpus = dsumm::load_corpus(ex.cfg.corpus_path);
    dsumm::preprocess_corpus(corpus, lex, ex.cfg.max_tokens);
    dsumm::OntologyLexicon ontology = ex.cfg.ontology_path.empty()
                                          ? dsumm::empty_lexicon()
                                          : dsumm::load_lexicon(ex.cfg.ontology_path, lex);
    std::vector<dsumm::KeyPhraseResult> results =
        dsumm::extract_keyphrases(corpus, ontology, ex.cfg.boost, ex.cfg.stats_scope);
    json report;
    report["version"] = "keyphrases/1";
    report["corpus"] = ex.cfg.corpus_path;
    report["boost"] = ex.cfg.boost;
    report["ontology_terms"] = ontology.terms.size();
    report["tweets"] = json::array();
    std::size_t found = 0;
    for (const dsumm::KeyPhraseResult& r : results) {
      report["tweets"].push_back(keyphrase_json(r));
      if (!r.none_found) ++found;
    }
    emit(report, ex.cfg.out_path);
    if (!ex.spans_out.empty()) write_spans(results, ex.spans_out);
    std::cerr << "key-phrases for " << found << "/" << results.size() << " tweets\n";
  });

  struct TrainArgs {
    dsumm::PipelineConfig cfg;
    std::string loss_name = "bce";
    bool rake = false;
    bool corpus_stats = false;
  } tr;
  CLI::App* train_cmd = app.add_subcommand("train", "Fit the salience head on gold labels");
  add_corpus_opts(train_cmd, tr.cfg);
  opt(train_cmd, "--gold", tr.cfg.gold_path, "Gold summary file, one tweet id per line")
      ->required();
  add_keyphrase_opts(train_cmd, tr.cfg, tr.rake, tr.corpus_stats);
  add_embedding_opts(train_cmd, tr.cfg);
  add_model_opts(train_cmd, tr.cfg);
  add_train_opts(train_cmd, tr.cfg, tr.loss_name);
  opt(train_cmd, "--out", tr.cfg.save_model_path, "Where to write the model checkpoint")
      ->required();
  train_cmd->callback([&] {
    finalize_enums(tr.cfg, tr.loss_name, "max", tr.rake, tr.corpus_stats);
    const dsumm::LexiconSet lex = dsumm::LexiconSet::english();
    dsumm::Corpus corpus = dsumm::load_corpus(tr.cfg.corpus_path);
    dsumm::preprocess_corpus(corpus, lex, tr.cfg.max_tokens);
    dsumm::OntologyLexicon ontology = tr.cfg.ontology_path.empty()
                                          ? dsumm::empty_lexicon()
                                          : dsumm::load_lexicon(tr.cfg.ontology_path, lex);
    std::vector<dsumm::KeyPhraseResult> phrases =
        dsumm::extract_keyphrases(corpus, ontology, tr.cfg.boost, tr.cfg.stats_scope);
    dsumm::FeatureBundle bundle = dsumm::compute_features(corpus, phrases, tr.cfg);
    for (const std::string& w : bundle.warnings) std::cerr << "warning: " << w << "\n";
    dsumm::GoldSummary gold = dsumm::load_gold_summary(tr.cfg.gold_path, corpus);
    if (gold.warned_empty) throw std::runtime_error("gold file lists no tweet ids; cannot train");
    corpus = dsumm::derive_labels(std::move(corpus), gold);
    dsumm::SalienceModel model = dsumm::init_model(bundle.feature_dim, tr.cfg.hidden_dim,
                                                   tr.cfg.seed, tr.cfg.dropout_p);
    dsumm::TrainResult result =
        dsumm::train(std::move(model), corpus, bundle.features, tr.cfg.train);
    dsumm::save_model(result.model, tr.cfg.save_model_path, &tr.cfg.train);
    std::cerr << "wrote " << tr.cfg.save_model_path << "\n";
    for (std::size_t e = 0; e < result.epoch_mean_loss.size(); ++e) {
      std::cerr << "epoch " << (e + 1) << " mean loss " << result.epoch_mean_loss[e] << "\n";
    }
  });

  struct SummarizeArgs {
    dsumm::PipelineConfig cfg;
    std::string aggregate_name = "max";
    bool rake = false;
    bool corpus_stats = false;
  } su;
  CLI::App* summarize = app.add_subcommand("summarize", "Select a diverse high-salience summary");
  add_corpus_opts(summarize, su.cfg);
  opt(summarize, "--model", su.cfg.model_path, "Salience model checkpoint (fresh init if absent)");
  add_keyphrase_opts(summarize, su.cfg, su.rake, su.corpus_stats);
  add_embedding_opts(summarize, su.cfg);
  add_model_opts(summarize, su.cfg);
  add_summary_opts(summarize, su.cfg, su.aggregate_name);
  opt(summarize, "--out", su.cfg.out_path, "Report path (default stdout)");
  summarize->callback([&] {
    finalize_enums(su.cfg, "bce", su.aggregate_name, su.rake, su.corpus_stats);
    dsumm::PipelineResult result = dsumm::run_pipeline(su.cfg);
    json report;
    report["version"] = "summary/1";
    report["length_requested"] = su.cfg.summary.length;
    report["considered"] = result.summary.considered;
    report["summary"] = summary_json(result);
    report["warnings"] = result.warnings;
    emit(report, su.cfg.out_path);
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << "selected " << result.summary.entries.size() << " tweets\n";
  });

  struct EvaluateArgs {
    dsumm::PipelineConfig cfg;
    std::string summary_path;
  } ev;
  CLI::App* evaluate = app.add_subcommand("evaluate", "ROUGE a summary against the gold summary");
  add_corpus_opts(evaluate, ev.cfg);
  opt(evaluate, "--summary", ev.summary_path, "Summary JSON (from `summarize`)")->required();
  opt(evaluate, "--gold", ev.cfg.gold_path, "Gold summary file, one tweet id per line")
      ->required();
  evaluate->add_flag("--keep-boilerplate", ev.cfg.keep_boilerplate,
                     "Keep url/htg/mtn/rtw markers in the scored tokens");
  opt(evaluate, "--out", ev.cfg.out_path, "Report path (default stdout)");
  evaluate->callback([&] {
    const dsumm::LexiconSet lex = dsumm::LexiconSet::english();
    dsumm::Corpus corpus = dsumm::load_corpus(ev.cfg.corpus_path);
    dsumm::preprocess_corpus(corpus, lex, ev.cfg.max_tokens);
    dsumm::GoldSummary gold = dsumm::load_gold_summary(ev.cfg.gold_path, corpus);
    const std::vector<std::string> ids = summary_ids_from_file(ev.summary_path);
    for (const std::string& id : ids) {
      if (corpus.find(id) == nullptr) {
        throw std::runtime_error("summary tweet \"" + id + "\" is not in the corpus");
      }
    }
    const std::vector<std::string> cand =
        dsumm::flatten_summary(ids, corpus, ev.cfg.keep_boilerplate);
    const std::vector<std::string> ref = dsumm::flatten_summary(
        dsumm::corpus_order(gold, corpus), corpus, ev.cfg.keep_boilerplate);
    const dsumm::RougeReport rouge = dsumm::rouge_report(cand, ref);
    json report = rouge_json(rouge);
    report["version"] = "rouge-report/1";
    report["candidate_tokens"] = cand.size();
    report["reference_tokens"] = ref.size();
    emit(report, ev.cfg.out_path);
    std::cerr << "ROUGE-1/2/L F1: " << rouge.rouge1.f1 << " " << rouge.rouge2.f1 << " "
              << rouge.rougeL.f1 << "\n";
  });

  struct EvalKpArgs {
    dsumm::PipelineConfig cfg;
    std::string pred_path;
    std::string gold_path;
    double threshold = dsumm::kDefaultIouThreshold;
  } ek;
  CLI::App* eval_kp = app.add_subcommand("eval-keyphrases",
                                         "Span IOU-F1 and Jaccard of predicted key-phrases");
  add_corpus_opts(eval_kp, ek.cfg);
  opt(eval_kp, "--pred", ek.pred_path, "Predicted spans, annotation JSONL")->required();
  opt(eval_kp, "--gold", ek.gold_path, "Gold spans, annotation JSONL")->required();
  opt(eval_kp, "--iou-threshold", ek.threshold, "IOU at or above which a span matches")
      ->capture_default_str();
  opt(eval_kp, "--out", ek.cfg.out_path, "Report path (default stdout)");
  eval_kp->callback([&] {
    const dsumm::LexiconSet lex = dsumm::LexiconSet::english();
    dsumm::Corpus corpus = dsumm::load_corpus(ek.cfg.corpus_path);
    dsumm::preprocess_corpus(corpus, lex, ek.cfg.max_tokens);
    const auto pred = span_map(dsumm::load_keyphrase_annotations(ek.pred_path, true));
    const auto gold = span_map(dsumm::load_keyphrase_annotations(ek.gold_path, false));
    const dsumm::KeyphraseEvalReport kp = dsumm::keyphrase_eval(pred, gold, corpus, ek.threshold);
    json report;
    report["version"] = "keyphrase-eval/1";
    report["iou"] = {{"precision", kp.iou_precision},
                     {"recall", kp.iou_recall},
                     {"f1", kp.iou_f1},
                     {"threshold", ek.threshold}};
    report["jaccard_mean"] = kp.jaccard_mean;
    report["per_tweet"] = json::array();
    for (const dsumm::PerTweetOverlap& d : kp.per_tweet) {
      report["per_tweet"].push_back({{"tweet_id", d.tweet_id},
                                     {"has_prediction", d.has_prediction},
                                     {"has_gold", d.has_gold},
                                     {"iou", d.iou},
                                     {"jaccard", d.jaccard},
                                     {"matched", d.matched}});
    }
    emit(report, ek.cfg.out_path);
    std::cerr << "IOU F1 " << kp.iou_f1 << ", mean Jaccard " << kp.jaccard_mean << "\n";
  });

  struct PipelineArgs {
    dsumm::PipelineConfig cfg;
    std::string loss_name = "bce";
    std::string aggregate_name = "max";
    bool rake = false;
    bool corpus_stats = false;
    bool dump_config = false;
  } pl;
  CLI::App* pipeline = app.add_subcommand("pipeline", "Run every stage end to end");
  opt(pipeline, "--corpus", pl.cfg.corpus_path, "Corpus JSONL file");
  opt(pipeline, "--max-tokens", pl.cfg.max_tokens, "Token cap per tweet")->capture_default_str();
  add_keyphrase_opts(pipeline, pl.cfg, pl.rake, pl.corpus_stats);
  add_embedding_opts(pipeline, pl.cfg);
  add_model_opts(pipeline, pl.cfg);
  add_train_opts(pipeline, pl.cfg, pl.loss_name);
  add_summary_opts(pipeline, pl.cfg, pl.aggregate_name);
  opt(pipeline, "--model", pl.cfg.model_path, "Load this checkpoint instead of training");
  opt(pipeline, "--gold", pl.cfg.gold_path, "Gold summary: enables training and ROUGE");
  opt(pipeline, "--save-model", pl.cfg.save_model_path, "Write the model used for scoring");
  opt(pipeline, "--out", pl.cfg.out_path, "Report path (default stdout)");
  pipeline->add_flag("--keep-boilerplate", pl.cfg.keep_boilerplate,
                     "Keep url/htg/mtn/rtw markers in ROUGE tokens");
  pipeline->add_flag("--dump-config", pl.dump_config,
                     "Print the effective configuration as JSON and exit");
  pipeline->callback([&] {
    finalize_enums(pl.cfg, pl.loss_name, pl.aggregate_name, pl.rake, pl.corpus_stats);
    if (pl.dump_config) {
      std::cout << dsumm::effective_config_json(pl.cfg) << "\n";
      return;
    }
    if (pl.cfg.corpus_path.empty()) {
      throw CLI::RequiredError("--corpus");
    }
    dsumm::PipelineResult result = dsumm::run_pipeline(pl.cfg);
    json report;
    report["version"] = "pipeline-report/1";
    report["config"] = json::parse(dsumm::effective_config_json(pl.cfg));
    report["keyphrases"] = json::array();
    for (const dsumm::KeyPhraseResult& r : result.keyphrases) {
      report["keyphrases"].push_back(keyphrase_json(r));
    }
    report["trained"] = result.trained;
    if (result.trained) report["epoch_mean_loss"] = result.epoch_mean_loss;
    report["considered"] = result.summary.considered;
    report["summary"] = summary_json(result);
    if (result.evaluated) report["rouge"] = rouge_json(result.rouge);
    report["warnings"] = result.warnings;
    emit(report, pl.cfg.out_path);
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << "selected " << result.summary.entries.size() << " of " << result.corpus.size()
              << " tweets\n";
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
