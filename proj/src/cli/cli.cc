// cli/cli.cc

// Copyright 2026  The scar-efd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "scar/cli.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "scar/checkpoint.h"
#include "scar/dataset.h"
#include "scar/fmeb.h"
#include "scar/gradcheck_suite.h"
#include "scar/synth.h"
#include "scar/trainer.h"

namespace scar::cli {

namespace fs = std::filesystem;
using data::Split;
using models::ModelKind;

namespace {

// Flag-level problems that CLI11 cannot see, e.g. wrong input arity.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string with_commas(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

std::string percent(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * x);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError(DataError::Kind::kIo, "cannot write " + path.string());
  f << text;
  if (!f) throw DataError(DataError::Kind::kIo, "write failed for " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw DataError(DataError::Kind::kIo,
                    "cannot create " + dir.string() + ": " + ec.message());
  }
}

// Loaded inputs for one model kind: a single set or an id-paired dataset.
struct Inputs {
  std::vector<data::EmbeddingSet> sets;
  data::PairedDataset paired;

  data::Examples split(Split s) const {
    return sets.size() == 1 ? data::select_split(sets[0], s)
                            : data::select_split(paired, s);
  }
};

Inputs load_inputs(const std::vector<std::string>& paths,
                   data::PairPolicy policy) {
  Inputs in;
  for (const auto& p : paths) in.sets.push_back(data::read_fmeb(p));
  if (in.sets.size() == 2) {
    in.paired = data::pair_by_utterance(in.sets[0], in.sets[1], policy);
  }
  return in;
}

void check_arity(ModelKind kind, std::size_t n_inputs) {
  const std::size_t want = models::is_fusion(kind) ? 2 : 1;
  if (n_inputs != want) {
    throw UsageError(std::string("--model ") + models::to_string(kind) +
                     " needs exactly " + std::to_string(want) +
                     " --input file(s), got " + std::to_string(n_inputs));
  }
}

// ---- synth ---------------------------------------------------------------

struct SynthFlags {
  data::SynthConfig cfg;
  std::uint32_t ka = 4;
  std::uint32_t kb = 4;
  std::string out_dir = ".";
};

void add_synth(CLI::App& app, SynthFlags& f) {
  auto* cmd = app.add_subcommand("synth", "Write a synthetic pair of FMEB sets "
                                          "with known Bayes-optimal EER");
  cmd->add_option("--dim-a", f.cfg.dim_a, "dimension of set a")->capture_default_str();
  cmd->add_option("--dim-b", f.cfg.dim_b, "dimension of set b")->capture_default_str();
  cmd->add_option("--n-train", f.cfg.n_train)->capture_default_str();
  cmd->add_option("--n-dev", f.cfg.n_dev)->capture_default_str();
  cmd->add_option("--n-test", f.cfg.n_test)->capture_default_str();
  cmd->add_option("--s,--separation", f.cfg.separation,
                  "class mean separation on informative dims")
      ->capture_default_str();
  cmd->add_option("--sigma,--noise", f.cfg.noise, "noise standard deviation")
      ->capture_default_str();
  cmd->add_option("--ka", f.ka, "informative dims of a: [0, ka)")->capture_default_str();
  cmd->add_option("--kb", f.kb, "informative dims of b: [ka, ka + kb)")
      ->capture_default_str();
  cmd->add_option("--seed", f.cfg.seed)->capture_default_str();
  cmd->add_option("--out-dir", f.out_dir)->capture_default_str();
}

int cmd_synth(SynthFlags& f, std::ostream& out) {
  f.cfg.informative_a = data::contiguous_dims(0, f.ka);
  f.cfg.informative_b = data::contiguous_dims(f.ka, f.kb);
  try {
    f.cfg.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  auto [a, b] = data::synth_generate(f.cfg);
  ensure_dir(f.out_dir);
  const fs::path dir(f.out_dir);
  data::write_fmeb(a, dir / "a.fmeb");
  data::write_fmeb(b, dir / "b.fmeb");

  const double ea = data::bayes_oracle_eer(f.cfg, data::OracleView::kA);
  const double eb = data::bayes_oracle_eer(f.cfg, data::OracleView::kB);
  const double ef = data::bayes_oracle_eer(f.cfg, data::OracleView::kFused);
  char machine[256];
  std::snprintf(machine, sizeof(machine),
                "# oracle a=%.17g b=%.17g fused=%.17g\n", ea, eb, ef);
  std::ostringstream report;
  report << "wrote " << (dir / "a.fmeb").string() << " and "
         << (dir / "b.fmeb").string() << " (" << a.size() << " records each)\n"
         << "oracle EER a: " << percent(ea) << "\n"
         << "oracle EER b: " << percent(eb) << "\n"
         << "oracle EER fused: " << percent(ef) << "\n"
         << machine;
  write_text(dir / "oracle.txt", report.str());
  out << report.str();
  return kExitOk;
}

// ---- train ---------------------------------------------------------------

struct TrainFlags {
  std::string model = "scar";
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  std::string pairing = "strict";
  std::string timing = "wall";
  train::TrainConfig cfg;
  std::uint32_t tokens = 32;
  std::uint32_t heads_cross = 2;
  std::uint32_t heads_refine = 2;
};

void add_train_options(CLI::App* cmd, TrainFlags& f) {
  cmd->add_option("--lr", f.cfg.lr)->capture_default_str();
  cmd->add_option("--batch-size", f.cfg.batch_size)->capture_default_str();
  cmd->add_option("--beta1", f.cfg.beta1)->capture_default_str();
  cmd->add_option("--beta2", f.cfg.beta2)->capture_default_str();
  cmd->add_option("--eps-adam", f.cfg.eps_adam)->capture_default_str();
  cmd->add_option("--dropout", f.cfg.dropout)->capture_default_str();
  cmd->add_option("--max-epochs", f.cfg.max_epochs)->capture_default_str();
  cmd->add_option("--patience", f.cfg.patience)->capture_default_str();
  cmd->add_option("--min-delta", f.cfg.min_delta,
                  "dev EER improvement that resets patience")
      ->capture_default_str();
  cmd->add_option("--seed", f.cfg.seed)->capture_default_str();
}

void add_train(CLI::App& app, TrainFlags& f) {
  auto* cmd = app.add_subcommand("train", "Train a model with early stopping "
                                          "on dev EER");
  cmd->add_option("--model", f.model, "fcn | cnn | concat | scar")
      ->check(CLI::IsMember({"fcn", "cnn", "concat", "scar"}))
      ->capture_default_str();
  cmd->add_option("--input", f.inputs,
                  "FMEB file; give two for concat and scar")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out-dir", f.out_dir)->capture_default_str();
  cmd->add_option("--pairing", f.pairing, "strict | intersect")
      ->check(CLI::IsMember({"strict", "intersect"}))
      ->capture_default_str();
  cmd->add_option("--timing", f.timing,
                  "wall: log elapsed ms; off: log 0 for reproducible files")
      ->check(CLI::IsMember({"wall", "off"}))
      ->capture_default_str();
  cmd->add_option("--tokens", f.tokens, "adaptive max-pool output length")
      ->capture_default_str();
  cmd->add_option("--heads-cross", f.heads_cross)->capture_default_str();
  cmd->add_option("--heads-refine", f.heads_refine)->capture_default_str();
  add_train_options(cmd, f);
}

models::ModelConfig model_config_for(const TrainFlags& f,
                                     const data::Examples& ex) {
  models::ModelConfig c;
  c.kind = models::parse_model_kind(f.model);
  c.dim_a = ex.dim_a;
  c.dim_b = ex.dim_b;
  c.tokens = f.tokens;
  c.heads_cross = f.heads_cross;
  c.heads_refine = f.heads_refine;
  c.validate();
  return c;
}

int cmd_train(const TrainFlags& f, std::ostream& out) {
  const ModelKind kind = models::parse_model_kind(f.model);
  check_arity(kind, f.inputs.size());
  try {
    f.cfg.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const Inputs in = load_inputs(f.inputs, f.pairing == "strict"
                                              ? data::PairPolicy::kStrict
                                              : data::PairPolicy::kIntersect);
  const data::Examples train_ex = in.split(Split::kTrain);
  const data::Examples dev_ex = in.split(Split::kDev);
  const data::Examples test_ex = in.split(Split::kTest);

  const models::ModelConfig mc = model_config_for(f, train_ex);
  Rng init_rng(f.cfg.seed);
  models::Model<float> model(mc, init_rng);

  ensure_dir(f.out_dir);
  const fs::path dir(f.out_dir);
  std::ostringstream history;
  history << "# scar train history\n"
          << "# " << models::describe(mc) << "\n"
          << "# " << f.cfg.describe() << " pairing=" << f.pairing << "\n"
          << "# inputs:";
  for (std::size_t i = 0; i < in.sets.size(); ++i) {
    history << " " << f.inputs[i] << " (" << in.sets[i].fm_name() << ")";
  }
  history << "\n# parameters " << model.param_count() << "\n"
          << "# epoch\ttrain_loss\tdev_eer\telapsed_ms\n";

  const bool timing = f.timing == "wall";
  const auto result = train::fit(
      std::move(model), train_ex, dev_ex, f.cfg,
      [&](const train::EpochRecord& r) {
        char line[128];
        std::snprintf(line, sizeof(line), "%zu\t%.6f\t%.6f\t%lld\n", r.epoch,
                      r.train_loss, r.dev_eer,
                      static_cast<long long>(timing ? r.elapsed_ms : 0));
        history << line;
        out << line << std::flush;
      });
  write_text(dir / "history.tsv", history.str());
  models::save_checkpoint(result.best, dir / "checkpoint.sckp");

  const auto dev = train::evaluate(result.best, dev_ex, "dev");
  const auto test = train::evaluate(result.best, test_ex, "test");
  std::ostringstream report;
  report << "best_epoch " << result.best_epoch << " of "
         << result.history.size() << "\n"
         << train::format_report(dev) << train::format_report(test);
  write_text(dir / "report.txt", report.str());
  out << report.str();
  return kExitOk;
}

// ---- eval ----------------------------------------------------------------

struct EvalFlags {
  std::string checkpoint;
  std::vector<std::string> inputs;
  std::string split = "test";
  std::string pairing = "strict";
};

void add_eval(CLI::App& app, EvalFlags& f) {
  auto* cmd = app.add_subcommand("eval", "Score one split with a checkpoint");
  cmd->add_option("--checkpoint", f.checkpoint)->required()->check(CLI::ExistingFile);
  cmd->add_option("--input", f.inputs)->required()->check(CLI::ExistingFile);
  cmd->add_option("--split", f.split, "train | dev | test")
      ->check(CLI::IsMember({"train", "dev", "test"}))
      ->capture_default_str();
  cmd->add_option("--pairing", f.pairing, "strict | intersect")
      ->check(CLI::IsMember({"strict", "intersect"}))
      ->capture_default_str();
}

int cmd_eval(const EvalFlags& f, std::ostream& out) {
  const auto model = models::load_checkpoint(f.checkpoint);
  const std::size_t want = models::is_fusion(model.config().kind) ? 2 : 1;
  if (f.inputs.size() != want) {
    throw ShapeError(std::string("checkpoint is a ") +
                     models::to_string(model.config().kind) + " model needing " +
                     std::to_string(want) + " input(s), got " +
                     std::to_string(f.inputs.size()));
  }
  const Inputs in = load_inputs(f.inputs, f.pairing == "strict"
                                              ? data::PairPolicy::kStrict
                                              : data::PairPolicy::kIntersect);
  const data::Examples ex = in.split(data::parse_split(f.split));
  out << "# " << models::describe(model.config()) << "\n"
      << train::format_report(train::evaluate(model, ex, f.split));
  return kExitOk;
}

// ---- gradcheck -----------------------------------------------------------

struct GradcheckFlags {
  train::GradcheckSuiteOptions options;
  std::string fault;
};

void add_gradcheck(CLI::App& app, GradcheckFlags& f) {
  auto* cmd = app.add_subcommand(
      "gradcheck", "Compare analytic gradients with central differences");
  cmd->add_option("--tolerance", f.options.tolerance)->capture_default_str();
  cmd->add_option("--eps", f.options.eps)->capture_default_str();
  cmd->add_option("--seed", f.options.seed)->capture_default_str();
  cmd->add_option("--coords", f.options.model_coords_per_tensor,
                  "coordinates sampled per tensor in model rows")
      ->capture_default_str();
  cmd->add_option("--inject-fault", f.fault,
                  "corrupt the backward pass of this op (negative control)");
}

int cmd_gradcheck(GradcheckFlags& f, std::ostream& out, std::ostream& err) {
  if (!f.fault.empty()) f.options.fault_kind = f.fault;
  if (!(f.options.eps >= 1e-5 && f.options.eps <= 1e-3)) {
    throw UsageError("--eps must be in [1e-5, 1e-3]");
  }
  const auto rows = train::run_gradcheck_suite(f.options);
  std::vector<std::string> failed;
  char line[160];
  std::snprintf(line, sizeof(line), "%-22s %-6s %14s %8s  %s\n", "name", "kind",
                "max_rel_err", "coords", "status");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%-22s %-6s %14.3e %8zu  %s\n",
                  r.name.c_str(), r.is_model ? "model" : "op", r.max_rel_error,
                  r.coords_checked, r.passed ? "PASS" : "FAIL");
    out << line;
    if (!r.passed) failed.push_back(r.name);
  }
  if (failed.empty()) return kExitOk;
  err << "gradient check failed for:";
  for (const auto& name : failed) err << " " << name;
  err << "\n";
  return kExitNumeric;
}

// ---- inspect -------------------------------------------------------------

void add_inspect(CLI::App& app, std::string& path) {
  auto* cmd = app.add_subcommand("inspect", "Summarise an FMEB or checkpoint file");
  cmd->add_option("path", path)->required();
}

int cmd_inspect(const std::string& path, std::ostream& out) {
  const auto bytes = data::read_file_bytes(path);
  if (bytes.size() >= 4 && std::equal(bytes.begin(), bytes.begin() + 4,
                                      models::kCheckpointMagic)) {
    const auto model = models::decode_checkpoint(bytes);
    out << "magic SCKP\nversion " << models::kCheckpointVersion << "\n"
        << models::describe(model.config()) << "\n";
    for (std::size_t i = 0; i < model.params().size(); ++i) {
      out << "tensor " << model.layout()[i].name << " "
          << shape_to_string(model.params()[i].shape()) << " "
          << model.params()[i].numel() << "\n";
    }
    out << "parameters " << with_commas(model.param_count()) << "\n";
    return kExitOk;
  }
  const auto set = data::decode_fmeb(bytes);
  out << "magic FMEB\nversion " << data::kFmebVersion << "\n"
      << "fm_name " << set.fm_name() << "\n"
      << "dim " << set.dim() << "\n"
      << "count " << set.size() << "\n";
  std::map<int, std::pair<std::size_t, std::size_t>> per_split;
  for (const auto& r : set.records()) {
    auto& c = per_split[static_cast<int>(r.split)];
    (r.label == data::Label::kFake ? c.second : c.first) += 1;
  }
  for (const auto& [split, counts] : per_split) {
    out << "split " << data::to_string(static_cast<Split>(split)) << " "
        << counts.first + counts.second << " (real " << counts.first
        << ", fake " << counts.second << ")\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app("EmoFake detection on pooled foundation-model embeddings", "scar");
  app.require_subcommand(1);
  SynthFlags synth;
  TrainFlags train_flags;
  EvalFlags eval;
  GradcheckFlags grad;
  std::string inspect_path;
  add_synth(app, synth);
  add_train(app, train_flags);
  add_eval(app, eval);
  add_gradcheck(app, grad);
  add_inspect(app, inspect_path);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("synth")) return cmd_synth(synth, out);
    if (app.got_subcommand("train")) return cmd_train(train_flags, out);
    if (app.got_subcommand("eval")) return cmd_eval(eval, out);
    if (app.got_subcommand("gradcheck")) return cmd_gradcheck(grad, out, err);
    if (app.got_subcommand("inspect")) return cmd_inspect(inspect_path, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const MetricError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const ShapeError& e) {
    err << "shape error: " << e.what() << "\n";
    return kExitShape;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitShape;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace scar::cli
