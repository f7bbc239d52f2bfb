// Copyright 2026 The vaminer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// vaminer: extract "the SOURCE of MODIFIER" expressions from a news corpus
// using a person-name gazetteer, then curate and analyze them.

#include <signal.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "vaminer/corpus.h"
#include "vaminer/curation.h"
#include "vaminer/error.h"
#include "vaminer/extraction.h"
#include "vaminer/gazetteer.h"
#include "vaminer/line_io.h"
#include "vaminer/report.h"
#include "vaminer/service.h"
#include "vaminer/stats.h"
#include "vaminer/text.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace vaminer {
namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

void RequireFile(const std::string &path, const char *what) {
  if (path.empty()) throw ConfigError(std::string(what) + " path is required");
  if (!FileExists(path)) throw ConfigError(std::string(what) + " not found: " + path);
}

void WriteText(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << content;
  if (!out) throw DataError("write failed for " + path);
}

LabelState LoadLabels(const std::string &path) {
  if (path.empty()) return LabelState();
  RequireFile(path, "labels file");
  return LabelStore::Open(path).state();
}

// --- gazetteer -------------------------------------------------------------

struct FilterDumpArgs {
  std::string dump, out, class_id = "Q5";
};

int RunFilterDump(const FilterDumpArgs &args) {
  RequireFile(args.dump, "dump");
  LineReader reader(args.dump);
  std::string content;
  FilterStats stats = FilterDump(reader, args.class_id, [&](EntityRecord &&r) {
    content += EntityToJsonLine(r);
    content.push_back('\n');
  });
  WriteFileAtomic(args.out, content);
  std::cerr << "lines: " << stats.lines << ", entities: " << stats.entities
            << ", emitted: " << stats.emitted << ", missing English label: " << stats.missing_label
            << ", malformed: " << stats.skipped_malformed << "\n";
  return 0;
}

struct BuildArgs {
  std::string entities, out, report;
};

int RunBuild(const BuildArgs &args) {
  RequireFile(args.entities, "entity file");
  LineReader reader(args.entities);
  NameIndex::Builder builder;
  std::string line;
  EntityRecord record;
  uint64_t skipped = 0;
  while (reader.Next(&line)) {
    if (text::Trim(line).empty()) continue;
    if (!ParseEntityLine(line, &record)) {
      ++skipped;
      continue;
    }
    builder.Add(record);
  }
  NameIndex index = std::move(builder).Build();
  index.Save(args.out);
  json report = {{"n_entities", index.n_entities()},
                 {"n_unique_names", index.n_unique_names()},
                 {"skipped_lines", skipped}};
  const std::string report_path = args.report.empty() ? args.out + ".report.json" : args.report;
  WriteText(report_path, report.dump(2) + "\n");
  std::cout << report.dump() << "\n";
  return 0;
}

// --- extract ---------------------------------------------------------------

struct ExtractArgs {
  std::string corpus, index, blacklist, out, summary, abbreviations, tsv;
  std::string format = "jsonl";
  bool case_insensitive_article = false;
  int max_modifier_tokens = kDefaultModifierTokens;
  int workers = 1;
};

int RunExtract(const ExtractArgs &args) {
  RequireFile(args.corpus, "corpus");
  RequireFile(args.index, "index");
  if (!args.blacklist.empty()) RequireFile(args.blacklist, "blacklist");
  if (args.max_modifier_tokens < 1) throw ConfigError("--max-modifier-tokens must be >= 1");
  if (args.workers < 1) throw ConfigError("--workers must be >= 1");

  NameIndex index = NameIndex::Load(args.index);
  Blacklist blacklist = args.blacklist.empty() ? Blacklist() : Blacklist::Load(args.blacklist);
  SentenceSplitter splitter = args.abbreviations.empty()
                                  ? SentenceSplitter()
                                  : SentenceSplitter::FromFile(args.abbreviations);
  ExtractOptions options;
  options.article = args.case_insensitive_article ? ArticleCase::kSentenceInitialToo
                                                  : ArticleCase::kLowercaseOnly;
  options.max_modifier_tokens = args.max_modifier_tokens;
  CandidateMatcher matcher(index, blacklist, options);
  CorpusReader corpus(args.corpus, args.format);

  ExtractionResult result = RunExtraction(corpus, splitter, matcher, args.workers);
  WriteCandidates(args.out, result.candidates);
  ExtractionSummary summary{result.corpus, result.stats};
  summary.Save(args.summary.empty() ? args.out + ".summary.json" : args.summary);
  if (!args.tsv.empty()) WriteText(args.tsv, CandidatesToTsv(result.candidates));

  json report = result.stats.total.ToJson();
  report["skipped_documents"] = result.skipped_documents;
  std::cout << report.dump() << "\n";
  return 0;
}

// --- stats / export --------------------------------------------------------

struct StatsArgs {
  std::string candidates, labels, corpus_summary, blacklist, tsv_dir, series, chart, countries,
      json_out;
  size_t top = 40;
};

int RunStats(const StatsArgs &args) {
  RequireFile(args.candidates, "candidates file");
  RequireFile(args.corpus_summary, "corpus summary");
  if (!args.countries.empty()) RequireFile(args.countries, "countries file");
  if (!args.blacklist.empty()) RequireFile(args.blacklist, "blacklist");

  std::vector<Candidate> candidates = ReadCandidates(args.candidates);
  LabelState labels = LoadLabels(args.labels);
  Blacklist blacklist = args.blacklist.empty() ? Blacklist() : Blacklist::Load(args.blacklist);
  ExtractionSummary summary = ExtractionSummary::Load(args.corpus_summary);
  std::set<std::string, std::less<>> countries;
  if (args.countries.empty()) {
    countries.insert(DefaultCountries().begin(), DefaultCountries().end());
  } else {
    countries = LoadCountries(args.countries);
  }

  Analytics a = ComputeAnalytics(candidates, labels, blacklist, summary, countries);

  std::cout << "candidates: " << a.tallies.active << " active, " << a.tallies.suppressed
            << " suppressed; labeled true " << a.tallies.true_va << ", not " << a.tallies.not_va
            << ", unlabeled " << a.tallies.unlabeled << "\n";
  std::cout << "precision: "
            << (a.precision.precision ? FormatPercent(100 * *a.precision.precision) : "undefined")
            << " (labeled only: "
            << (a.precision.labeled_precision ? FormatPercent(100 * *a.precision.labeled_precision)
                                              : "undefined")
            << ")\n";
  std::cout << "unique true VA: " << a.unique_true_va << "\n\n";
  std::cout << "# Sources\n" << RenderText(a.sources, args.top) << "\n";
  std::cout << "# Modifiers\n" << RenderText(a.modifiers, args.top) << "\n";
  std::cout << "# Countries as modifiers\n" << RenderText(a.countries, args.top) << "\n";
  std::cout << "# Sections\n" << RenderText(a.sections, args.top) << "\n";
  std::cout << "# Authors\n" << RenderText(a.authors, args.top) << "\n";
  std::cout << "# Per year\n" << RenderText(a.per_year);

  if (!args.tsv_dir.empty()) {
    fs::create_directories(args.tsv_dir);
    const fs::path dir(args.tsv_dir);
    WriteText((dir / "sources.tsv").string(), RenderTsv(a.sources));
    WriteText((dir / "modifiers.tsv").string(), RenderTsv(a.modifiers));
    WriteText((dir / "countries.tsv").string(), RenderTsv(a.countries));
    WriteText((dir / "sections.tsv").string(), RenderTsv(a.sections));
    WriteText((dir / "authors.tsv").string(), RenderTsv(a.authors));
  }
  if (!args.series.empty()) WriteText(args.series, RenderSeriesCsv(a.per_year));
  if (!args.chart.empty()) WriteText(args.chart, RenderSeriesSvg(a.per_year));
  if (!args.json_out.empty()) {
    json j = AnalyticsToJson(a, summary, args.top);
    j["blacklist_size"] = blacklist.size();
    WriteText(args.json_out, j.dump(2) + "\n");
  }
  return 0;
}

struct ExportArgs {
  std::string candidates, labels, blacklist, out;
};

int RunExport(const ExportArgs &args) {
  RequireFile(args.candidates, "candidates file");
  if (!args.blacklist.empty()) RequireFile(args.blacklist, "blacklist");
  std::vector<Candidate> candidates = ReadCandidates(args.candidates);
  LabelState labels = LoadLabels(args.labels);
  Blacklist blacklist = args.blacklist.empty() ? Blacklist() : Blacklist::Load(args.blacklist);
  std::string tsv = CandidatesToTsv(UniqueTrueVa(candidates, labels, blacklist));
  if (args.out.empty() || args.out == "-") {
    std::cout << tsv;
  } else {
    WriteText(args.out, tsv);
  }
  return 0;
}

// --- serve -----------------------------------------------------------------

struct ServeArgs {
  ServiceConfig config;
  std::string host = "127.0.0.1";
  int port = 8080;
};

int RunServe(const ServeArgs &args) {
  RequireFile(args.config.candidates_path, "candidates file");
  if (!args.config.corpus_summary_path.empty()) {
    RequireFile(args.config.corpus_summary_path, "corpus summary");
  }
  if (!args.config.ui_dir.empty() && !fs::is_directory(args.config.ui_dir)) {
    throw ConfigError("UI directory not found: " + args.config.ui_dir);
  }

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  CurationSession session(args.config);
  Service service(session, args.config.ui_dir);
  int port = service.Bind(args.host, args.port);
  if (port < 0) throw ConfigError("cannot bind " + args.host + ":" + std::to_string(args.port));
  std::cout << "listening on http://" << args.host << ":" << port << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    service.Stop();
  });
  service.Run();
  // Wake the waiter if the server stopped for another reason.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  session.Checkpoint();
  return 0;
}

// --- phrases ---------------------------------------------------------------

// Prints the phrase spans of each stdin line as JSON, in code point offsets.
int RunPhrases(bool case_insensitive_article, int max_modifier_tokens) {
  const ArticleCase article = case_insensitive_article ? ArticleCase::kSentenceInitialToo
                                                       : ArticleCase::kLowercaseOnly;
  std::string line;
  while (std::getline(std::cin, line)) {
    json spans = json::array();
    for (const CandidatePhrase &p : FindPhrases(line, article)) {
      spans.push_back({{"start", text::CodePointOffset(line, p.start)},
                       {"end", text::CodePointOffset(line, p.end)},
                       {"inner", std::string(p.inner_text(line))},
                       {"modifier", ExtractModifier(line, p, max_modifier_tokens)}});
    }
    std::cout << spans.dump(-1, ' ', false, json::error_handler_t::replace) << "\n";
  }
  return 0;
}

int Main(int argc, char **argv) {
  CLI::App app{"Extract and curate \"the SOURCE of MODIFIER\" expressions from a corpus"};
  app.require_subcommand(1);
  int rc = 0;

  auto *gazetteer = app.add_subcommand("gazetteer", "Build the person-name gazetteer");
  gazetteer->require_subcommand(1);

  FilterDumpArgs filter_args;
  auto *filter = gazetteer->add_subcommand("filter-dump", "Filter a knowledge-base dump to entities of a class");
  filter->add_option("--dump", filter_args.dump, "Line-delimited JSON dump (.gz ok)")->required();
  filter->add_option("--out", filter_args.out, "Entity list output (JSONL)")->required();
  filter->add_option("--class", filter_args.class_id, "instanceOf class id")->capture_default_str();
  filter->callback([&] { rc = RunFilterDump(filter_args); });

  BuildArgs build_args;
  auto *build = gazetteer->add_subcommand("build", "Build a name index from an entity list");
  build->add_option("--entities", build_args.entities, "Entity list (JSONL)")->required();
  build->add_option("--out", build_args.out, "Index output file")->required();
  build->add_option("--report", build_args.report, "Report file (default: <out>.report.json)");
  build->callback([&] { rc = RunBuild(build_args); });

  ExtractArgs extract_args;
  auto *extract = app.add_subcommand("extract", "Extract candidates from a corpus");
  extract->add_option("--corpus", extract_args.corpus, "Corpus JSONL (.gz ok)")->required();
  extract->add_option("--format", extract_args.format, "Corpus format")->capture_default_str();
  extract->add_option("--index", extract_args.index, "Name index file")->required();
  extract->add_option("--blacklist", extract_args.blacklist, "Blacklist file");
  extract->add_option("--out", extract_args.out, "Candidate output (JSONL)")->required();
  extract->add_option("--summary", extract_args.summary,
                      "Corpus summary output (default: <out>.summary.json)");
  extract->add_option("--tsv", extract_args.tsv, "Also write candidates as TSV");
  extract->add_option("--abbreviations", extract_args.abbreviations, "Abbreviation list");
  extract->add_flag("--case-insensitive-article", extract_args.case_insensitive_article,
                    "Also match sentence-initial \"The\"");
  extract->add_option("--max-modifier-tokens", extract_args.max_modifier_tokens,
                      "Modifier token cap")->capture_default_str();
  extract->add_option("--workers", extract_args.workers, "Worker threads")->capture_default_str();
  extract->callback([&] { rc = RunExtract(extract_args); });

  StatsArgs stats_args;
  auto *stats = app.add_subcommand("stats", "Frequency tables, distributions and per-year series");
  stats->add_option("--candidates", stats_args.candidates, "Candidate file")->required();
  stats->add_option("--labels", stats_args.labels, "Label log");
  stats->add_option("--corpus-summary", stats_args.corpus_summary, "Corpus summary file")->required();
  stats->add_option("--blacklist", stats_args.blacklist, "Blacklist (suppresses candidates)");
  stats->add_option("--tsv", stats_args.tsv_dir, "Write table TSV files to this directory");
  stats->add_option("--series", stats_args.series, "Write the per-year CSV series");
  stats->add_option("--chart", stats_args.chart, "Write the per-year SVG chart");
  stats->add_option("--countries", stats_args.countries, "Country name list");
  stats->add_option("--top", stats_args.top, "Rows per printed table (0 = all)")->capture_default_str();
  stats->add_option("--json", stats_args.json_out, "Write the stats JSON payload");
  stats->callback([&] { rc = RunStats(stats_args); });

  ServeArgs serve_args;
  auto *serve = app.add_subcommand("serve", "Run the curation HTTP service");
  serve->add_option("--port", serve_args.port, "Port (0 = any free port)")->capture_default_str();
  serve->add_option("--host", serve_args.host, "Bind address")->capture_default_str();
  serve->add_option("--candidates", serve_args.config.candidates_path, "Candidate file")->required();
  serve->add_option("--labels", serve_args.config.labels_path, "Label log (created if missing)")->required();
  serve->add_option("--blacklist", serve_args.config.blacklist_path, "Blacklist (created if missing)")->required();
  serve->add_option("--corpus-summary", serve_args.config.corpus_summary_path, "Corpus summary file");
  serve->add_option("--countries", serve_args.config.countries_path, "Country name list");
  serve->add_option("--ui-dir", serve_args.config.ui_dir, "Static UI assets");
  serve->callback([&] { rc = RunServe(serve_args); });

  ExportArgs export_args;
  auto *exp = app.add_subcommand("export", "Write deduplicated true VA as TSV");
  exp->add_option("--candidates", export_args.candidates, "Candidate file")->required();
  exp->add_option("--labels", export_args.labels, "Label log");
  exp->add_option("--blacklist", export_args.blacklist, "Blacklist (suppresses candidates)");
  exp->add_option("--out", export_args.out, "Output TSV (default: stdout)");
  exp->callback([&] { rc = RunExport(export_args); });

  bool phrases_capital = false;
  int phrases_tokens = kDefaultModifierTokens;
  auto *phrases = app.add_subcommand("phrases", "Print phrase matches for each stdin line");
  phrases->group("");
  phrases->add_flag("--case-insensitive-article", phrases_capital, "Also match sentence-initial \"The\"");
  phrases->add_option("--max-modifier-tokens", phrases_tokens, "Modifier token cap");
  phrases->callback([&] { rc = RunPhrases(phrases_capital, phrases_tokens); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  } catch (const ConfigError &e) {
    std::cerr << "vaminer: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError &e) {
    std::cerr << "vaminer: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception &e) {
    std::cerr << "vaminer: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

}  // namespace
}  // namespace vaminer

int main(int argc, char **argv) { return vaminer::Main(argc, argv); }
