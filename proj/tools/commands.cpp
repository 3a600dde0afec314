#include "commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "tabgrid/errors.hpp"
#include "tabgrid/evaluator.hpp"
#include "tabgrid/fixtures.hpp"
#include "tabgrid/interpreter.hpp"
#include "tabgrid/io.hpp"
#include "tabgrid/pipeline.hpp"

#ifndef TABGRID_VERSION
#define TABGRID_VERSION "0.0.0"
#endif

namespace tabgrid::cli {

namespace fs = std::filesystem;

namespace {

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_bytes(const std::string& bytes, const fs::path& path) {
  try {
    return Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": malformed JSON: " + e.what());
  }
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream ss;
  for (unsigned int i = 0; i < len; ++i)
    ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return ss.str();
}

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<fs::path> list_json(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw InputError(dir.string() + ": not a directory");
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json" &&
        e.path().filename() != "manifest.json")
      out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

template <typename F>
void parallel_for(std::size_t n, F&& fn) {
  const unsigned workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

struct FileOutcome {
  std::string error;
  bool internal = false;
  int tables = 0;
  int written = 0;
};

// Runs `fn` and converts failures into a per-file diagnostic.
template <typename F>
void guarded(const fs::path& file, FileOutcome& o, F&& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    o.error = file.filename().string() + ": " + e.what();
  } catch (const InputError& e) {
    o.error = file.filename().string() + ": " + e.what();
  } catch (const std::exception& e) {
    o.error = file.filename().string() + ": internal error: " + e.what();
    o.internal = true;
  }
}

int report_outcomes(const std::vector<FileOutcome>& outcomes, std::ostream& err) {
  int code = kExitOk;
  for (const FileOutcome& o : outcomes) {
    if (o.error.empty()) continue;
    err << "error: " << o.error << '\n';
    code = std::max(code, o.internal ? kExitInternal : kExitInput);
  }
  if (code == kExitInternal &&
      std::any_of(outcomes.begin(), outcomes.end(),
                  [](const FileOutcome& o) { return !o.error.empty() && !o.internal; }))
    code = kExitInput;
  return code;
}

Json manifest(const std::string& command, const std::vector<fs::path>& inputs,
              const std::vector<fs::path>& configs, const std::string& config_bytes,
              const fs::path& out, int written, const std::vector<FileOutcome>& outcomes) {
  Json in = Json::array();
  for (const auto& p : inputs) in.push_back(p.filename().string());
  Json cfg = Json::array();
  for (const auto& p : configs) cfg.push_back(p.string());
  Json errors = Json::array();
  for (const auto& o : outcomes)
    if (!o.error.empty()) errors.push_back(o.error);
  return {{"command", command},
          {"inputs", in},
          {"configs", cfg},
          {"output_dir", out.string()},
          {"config_sha256", sha256_hex(config_bytes)},
          {"version", TABGRID_VERSION},
          {"timestamp", timestamp()},
          {"files_written", written},
          {"errors", errors}};
}

Json prf_json(const PRF& p) {
  return {{"tp", p.tp},         {"fp", p.fp},         {"fn", p.fn},
          {"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
}

void print_prf(std::ostream& out, const std::string& label, const PRF& p) {
  out << std::left << std::setw(14) << label << std::right << " tp " << std::setw(6) << p.tp
      << "  fp " << std::setw(6) << p.fp << "  fn " << std::setw(6) << p.fn << std::fixed
      << std::setprecision(4) << "  P " << p.precision << "  R " << p.recall << "  F1 "
      << p.f1 << '\n';
  out.unsetf(std::ios::fixed);
}

struct LoadedPages {
  std::map<std::string, std::map<int, PageTables>> docs;
  std::vector<std::string> errors;
};

LoadedPages load_pages(const fs::path& dir, bool drop_expected_missed) {
  LoadedPages out;
  for (const fs::path& f : list_json(dir)) {
    const auto key = parse_layout_file_name(f.filename().string());
    if (!key) continue;
    try {
      PageTables p = page_tables_from_json(read_json_file(f));
      if (drop_expected_missed) {
        std::vector<RecognizedTable> kept;
        for (std::size_t i = 0; i < p.tables.size(); ++i)
          if (i >= p.expected_missed.size() || !p.expected_missed[i])
            kept.push_back(std::move(p.tables[i]));
        p.tables = std::move(kept);
        p.expected_missed.assign(p.tables.size(), false);
      }
      out.docs[key->file_id][key->page_nr] = std::move(p);
    } catch (const Error& e) {
      out.errors.push_back(f.filename().string() + ": " + e.what());
    }
  }
  return out;
}

using PagePair = std::pair<const std::vector<RecognizedTable>*, const std::vector<RecognizedTable>*>;

// Aligns gt and pred pages by (file_id, page_nr); a page missing on one side
// counts as a page without tables.
std::map<std::string, std::vector<PagePair>> align_pages(const LoadedPages& gt,
                                                          const LoadedPages& pred,
                                                          std::vector<std::string>& missing) {
  static const std::vector<RecognizedTable> none;
  std::set<std::pair<std::string, int>> keys;
  for (const auto& [id, pages] : gt.docs)
    for (const auto& [nr, p] : pages) keys.insert({id, nr});
  for (const auto& [id, pages] : pred.docs)
    for (const auto& [nr, p] : pages) keys.insert({id, nr});
  std::map<std::string, std::vector<PagePair>> out;
  auto find = [](const LoadedPages& l, const std::string& id, int nr) -> const std::vector<RecognizedTable>* {
    const auto d = l.docs.find(id);
    if (d == l.docs.end()) return nullptr;
    const auto p = d->second.find(nr);
    return p == d->second.end() ? nullptr : &p->second.tables;
  };
  for (const auto& [id, nr] : keys) {
    const auto* g = find(gt, id, nr);
    const auto* p = find(pred, id, nr);
    if (!g) missing.push_back(layout_file_name(id, nr) + ": no ground truth");
    if (!p) missing.push_back(layout_file_name(id, nr) + ": no prediction");
    out[id].push_back({g ? g : &none, p ? p : &none});
  }
  return out;
}

Json eval_recognition(const std::map<std::string, std::vector<PagePair>>& docs,
                      const EvalConfig& cfg, std::ostream& out) {
  std::vector<PRF> per_doc;
  PRF total;
  Json documents = Json::array();
  for (const auto& [id, pages] : docs) {
    PRF doc;
    for (const auto& [g, p] : pages) doc += recognition_counts(*g, *p, cfg);
    per_doc.push_back(doc);
    total += doc;
    Json d = prf_json(doc);
    d["file_id"] = id;
    documents.push_back(d);
    print_prf(out, id, doc);
  }
  const MeanPRF mean = corpus_average(per_doc);
  out << std::fixed << std::setprecision(4) << "average        P " << mean.precision
      << "  R " << mean.recall << "  F1 " << mean.f1 << '\n';
  out.unsetf(std::ios::fixed);
  print_prf(out, "pooled", total);
  return {{"mode", "recognition"},
          {"iou_min", cfg.iou_min},
          {"documents", documents},
          {"average", {{"precision", mean.precision}, {"recall", mean.recall}, {"f1", mean.f1}}},
          {"pooled", prf_json(total)}};
}

Json eval_cells(const std::map<std::string, std::vector<PagePair>>& docs,
                const EvalConfig& cfg, std::ostream& out) {
  std::map<double, double> f1;
  Json rows = Json::array();
  for (double t : cfg.cell_iou_thresholds) {
    PRF at;
    for (const auto& [id, pages] : docs)
      for (const auto& [g, p] : pages) at += cell_counts(*g, *p, t, cfg.iou_min);
    f1[t] = at.f1;
    Json r = prf_json(at);
    r["iou"] = t;
    rows.push_back(r);
    std::ostringstream label;
    label << "IoU " << std::fixed << std::setprecision(2) << t;
    print_prf(out, label.str(), at);
  }
  const double wavg = wavg_f1(f1);
  out << std::fixed << std::setprecision(4) << "WAvg-F1        " << wavg << '\n';
  out.unsetf(std::ios::fixed);
  return {{"mode", "cells"}, {"iou_min", cfg.iou_min}, {"thresholds", rows}, {"wavg_f1", wavg}};
}

struct LoadedTuples {
  std::vector<TupleSet> sets;
  std::vector<std::string> errors;
};

LoadedTuples load_tuples(const fs::path& dir, bool strict) {
  LoadedTuples out;
  for (const fs::path& f : list_json(dir)) {
    const auto key = parse_tuple_file_name(f.filename().string());
    if (!key) continue;
    try {
      TupleSet t = tuple_set_from_json(read_json_file(f));
      if (strict && (t.file_id != key->file_id || t.page_nr != key->page_nr ||
                     t.table_idx != key->table_idx))
        throw InputError("file name disagrees with its file_id/page_nr/table_idx");
      out.sets.push_back(std::move(t));
    } catch (const Error& e) {
      out.errors.push_back(f.filename().string() + ": " + e.what());
    }
  }
  return out;
}

int fail_with(const std::vector<std::string>& errors, std::ostream& err) {
  for (const auto& e : errors) err << "error: " << e << '\n';
  return kExitInput;
}

}  // namespace

unsigned worker_count() {
  unsigned n = 0;
  if (const char* v = std::getenv("TABGRID_THREADS")) n = static_cast<unsigned>(std::strtoul(v, nullptr, 10));
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

int cmd_recognize(const RecognizeOptions& o, std::ostream& out, std::ostream& err) {
  RecognizerConfig cfg;
  std::string cfg_bytes;
  std::vector<fs::path> configs;
  if (o.config) {
    cfg_bytes = read_bytes(*o.config);
    cfg = recognizer_config_from_json(parse_bytes(cfg_bytes, *o.config));
    configs.push_back(*o.config);
  } else {
    cfg_bytes = to_json(cfg).dump();
  }
  const auto orientation = parse_orientation(o.orientation);
  if (!orientation) throw ConfigError({"--orientation must be standard or vertical"});

  const std::vector<fs::path> files = list_json(o.layouts);
  fs::create_directories(o.out);
  std::vector<FileOutcome> outcomes(files.size());
  parallel_for(files.size(), [&](std::size_t i) {
    guarded(files[i], outcomes[i], [&] {
      const std::string name = files[i].filename().string();
      const auto key = parse_layout_file_name(name);
      if (!key) throw InputError("file name does not follow <FILE_ID>_page<NR>.json");
      const PageLayout layout = layout_from_json(read_json_file(files[i]));
      PageResult r = recognize_page(layout, cfg, *orientation);
      PageTables pt{key->file_id, key->page_nr, r.orientation, std::move(r.tables), {},
                    std::move(r.diagnostics)};
      outcomes[i].tables = static_cast<int>(pt.tables.size());
      write_json_file(o.out / name, to_json(pt));
      outcomes[i].written = 1;
    });
  });

  int written = 0;
  int tables = 0;
  for (const auto& x : outcomes) {
    written += x.written;
    tables += x.tables;
  }
  const int code = report_outcomes(outcomes, err);
  write_json_file(o.out / "manifest.json",
                  manifest("recognize", files, configs, cfg_bytes, o.out, written, outcomes));
  out << "recognized " << tables << " table(s) on " << written << " of " << files.size()
      << " page(s)\n";
  return code;
}

int cmd_interpret(const InterpretOptions& o, std::ostream& out, std::ostream& err) {
  const std::string rules_bytes = read_bytes(o.rules);
  const std::vector<Meaning> meanings =
      compile_meanings(meanings_from_json(parse_bytes(rules_bytes, o.rules)));

  const std::vector<fs::path> files = list_json(o.tables);
  fs::create_directories(o.out);
  std::vector<FileOutcome> outcomes(files.size());
  parallel_for(files.size(), [&](std::size_t i) {
    guarded(files[i], outcomes[i], [&] {
      const auto key = parse_layout_file_name(files[i].filename().string());
      const PageTables page = page_tables_from_json(read_json_file(files[i]));
      const std::string file_id = !page.file_id.empty() ? page.file_id
                                  : key                 ? key->file_id
                                                        : files[i].stem().string();
      const int page_nr = !page.file_id.empty() ? page.page_nr : key ? key->page_nr : 0;
      for (std::size_t t = 0; t < page.tables.size(); ++t) {
        const TupleSet ts = interpret_table(page.tables[t], meanings, file_id, page_nr,
                                            static_cast<int>(t));
        ++outcomes[i].tables;
        if (ts.tuples.empty()) continue;
        write_json_file(o.out / tuple_file_name(file_id, page_nr, static_cast<int>(t)),
                        to_json(ts));
        ++outcomes[i].written;
      }
    });
  });
  int written = 0;
  int tables = 0;
  for (const auto& x : outcomes) {
    written += x.written;
    tables += x.tables;
  }
  const int code = report_outcomes(outcomes, err);
  write_json_file(o.out / "manifest.json",
                  manifest("interpret", files, {o.rules}, rules_bytes, o.out, written, outcomes));
  out << "interpreted " << tables << " table(s), " << written << " tuple file(s) written\n";
  return code;
}

int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  EvalConfig cfg;
  if (o.config) cfg = eval_config_from_json(read_json_file(*o.config));

  Json report;
  if (o.mode == "recognition" || o.mode == "cells") {
    const LoadedPages gt = load_pages(o.gt, true);
    const LoadedPages pred = load_pages(o.pred, false);
    std::vector<std::string> errors = gt.errors;
    errors.insert(errors.end(), pred.errors.begin(), pred.errors.end());
    std::vector<std::string> missing;
    const auto docs = align_pages(gt, pred, missing);
    if (o.strict) errors.insert(errors.end(), missing.begin(), missing.end());
    if (!errors.empty()) return fail_with(errors, err);
    if (docs.empty()) return fail_with({"no page files found"}, err);
    report = o.mode == "recognition" ? eval_recognition(docs, cfg, out)
                                     : eval_cells(docs, cfg, out);
  } else if (o.mode == "interpretation") {
    const LoadedTuples gt = load_tuples(o.gt, o.strict);
    const LoadedTuples pred = load_tuples(o.pred, o.strict);
    std::vector<std::string> errors = gt.errors;
    errors.insert(errors.end(), pred.errors.begin(), pred.errors.end());
    if (o.strict) {
      std::set<std::pair<std::string, int>> gp, pp;
      for (const auto& t : gt.sets) gp.insert({t.file_id, t.page_nr});
      for (const auto& t : pred.sets) pp.insert({t.file_id, t.page_nr});
      for (const auto& k : gp)
        if (!pp.count(k)) errors.push_back(k.first + " page " + std::to_string(k.second) + ": no prediction");
      for (const auto& k : pp)
        if (!gp.count(k)) errors.push_back(k.first + " page " + std::to_string(k.second) + ": no ground truth");
    }
    if (!errors.empty()) return fail_with(errors, err);
    const PRF s = interpretation_score(gt.sets, pred.sets);
    print_prf(out, "tuples", s);
    report = prf_json(s);
    report["mode"] = "interpretation";
    report["gt_files"] = gt.sets.size();
    report["pred_files"] = pred.sets.size();
  } else {
    throw ConfigError({"--mode must be recognition, cells or interpretation"});
  }
  if (o.report) write_json_file(*o.report, report);
  return kExitOk;
}

int cmd_gen_fixtures(const GenFixturesOptions& o, std::ostream& out, std::ostream&) {
  const std::string bytes = read_bytes(o.spec);
  const FixtureSpec spec = fixture_spec_from_json(parse_bytes(bytes, o.spec));
  const FixtureCorpus corpus = generate_fixtures(spec);
  write_fixtures(corpus, o.out);
  Json m = manifest("gen-fixtures", {o.spec}, {o.spec}, bytes, o.out,
                    static_cast<int>(corpus.pages.size()), {});
  Json corruptions = Json::array();
  for (const auto& p : corpus.pages)
    if (p.corrupted)
      corruptions.push_back(layout_file_name(p.truth.file_id, p.truth.page_nr) + " " + *p.corrupted);
  m["corruptions"] = corruptions;
  write_json_file(o.out / "manifest.json", m);
  out << "generated " << corpus.pages.size() << " page(s) in " << o.out.string() << '\n';
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rule-based table recognition, interpretation and evaluation", "tabgrid"};
  app.set_version_flag("--version", TABGRID_VERSION);
  app.require_subcommand(1);

  RecognizeOptions ro;
  auto* rec = app.add_subcommand("recognize", "Recognize tables in page layout files");
  rec->add_option("--layouts", ro.layouts, "Directory of <FILE_ID>_page<NR>.json layouts")->required();
  rec->add_option("--config", ro.config, "Recognizer config JSON");
  rec->add_option("--out", ro.out, "Output directory")->required();
  rec->add_option("--orientation", ro.orientation, "standard or vertical")
      ->check(CLI::IsMember({"standard", "vertical"}));

  InterpretOptions io;
  auto* interp = app.add_subcommand("interpret", "Assign meanings to table columns and extract tuples");
  interp->add_option("--tables", io.tables, "Directory of recognized page files")->required();
  interp->add_option("--rules", io.rules, "Meanings config JSON")->required();
  interp->add_option("--out", io.out, "Output directory")->required();

  EvalOptions eo;
  auto* ev = app.add_subcommand("eval", "Score predictions against ground truth");
  ev->add_option("--mode", eo.mode, "recognition, cells or interpretation")
      ->required()
      ->check(CLI::IsMember({"recognition", "cells", "interpretation"}));
  ev->add_option("--gt", eo.gt, "Ground-truth directory")->required();
  ev->add_option("--pred", eo.pred, "Prediction directory")->required();
  ev->add_option("--config", eo.config, "Evaluation config JSON");
  ev->add_option("--report", eo.report, "Write the report as JSON to this file");
  ev->add_flag("--strict", eo.strict, "Fail on missing counterparts and name mismatches");

  GenFixturesOptions go;
  auto* gen = app.add_subcommand("gen-fixtures", "Generate a synthetic corpus");
  gen->add_option("--spec", go.spec, "Fixture spec JSON")->required();
  gen->add_option("--out", go.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*rec) return cmd_recognize(ro, out, err);
    if (*interp) return cmd_interpret(io, out, err);
    if (*ev) return cmd_eval(eo, out, err);
    if (*gen) return cmd_gen_fixtures(go, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DuplicateKey& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const EmptyCorpus& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace tabgrid::cli
