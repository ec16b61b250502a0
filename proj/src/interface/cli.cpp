// Copyright 2026 The glandseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "glandseg/cli.hpp"

#include <charconv>
#include <csignal>
#include <iostream>
#include <sstream>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "glandseg/io/feature_csv.hpp"
#include "glandseg/io/image_codec.hpp"
#include "glandseg/io/manifest.hpp"
#include "glandseg/io/model_file.hpp"
#include "glandseg/io/preparation.hpp"
#include "glandseg/io/report_file.hpp"
#include "glandseg/metrics.hpp"
#include "glandseg/segmentation.hpp"
#include "glandseg/service.hpp"
#include "logging.hpp"

namespace glandseg {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  for (std::string part; std::getline(stream, part, sep);) parts.push_back(part);
  return parts;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size())
    throw InvalidArgument("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  return value;
}

/// "1:0,2:45" -> offsets.
std::vector<Offset> parse_offsets(const std::string& text) {
  std::vector<Offset> offsets;
  for (const std::string& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InvalidArgument("offset '" + item + "' is not DELTA:DEGREES");
    offsets.push_back(Offset::from_degrees(parse_number<int>(item.substr(0, colon), "offset distance"),
                                           parse_number<int>(item.substr(colon + 1), "offset angle")));
  }
  if (offsets.empty()) throw InvalidArgument("--offsets is empty");
  return offsets;
}

std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> radii;
  for (const std::string& item : split(text, ',')) radii.push_back(parse_number<double>(item, "radius"));
  if (radii.empty()) throw InvalidArgument("--radii is empty");
  return radii;
}

CvProtocol parse_cv(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string value = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  if (kind == "kfold") return KFold{parse_number<int>(value, "fold count")};
  if (kind == "holdout") return Holdout{parse_number<double>(value, "holdout training fraction")};
  throw InvalidArgument("--cv must be kfold:K or holdout:R, got '" + text + "'");
}

/// Splits "host:port"; the port is required.
std::pair<std::string, int> parse_address(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0) throw InvalidArgument("--addr must be HOST:PORT");
  return {text.substr(0, colon), parse_number<int>(text.substr(colon + 1), "port")};
}

// ---------------------------------------------------------------------------

struct PatchifyOptions {
  std::string slide;
  Index size = 1024;
  double minTissue = 0.05;
  Index resize = 384;
  std::string out;
};

int run_patchify(const PatchifyOptions& o, std::ostream& out) {
  if (o.size < 1) throw InvalidArgument("--size must be positive");
  if (o.resize < 0) throw InvalidArgument("--resize must be >= 0");
  if (!(o.minTissue >= 0 && o.minTissue <= 1)) throw InvalidArgument("--min-tissue must be in [0, 1]");
  const RgbImage slide = io::read_rgb(o.slide);
  if (slide.width < o.size || slide.height < o.size)
    throw DataError(o.slide + ": slide is smaller than one " + std::to_string(o.size) + " px patch");
  const std::vector<io::SlidePatch> patches = io::extract_patches(slide, o.size, o.minTissue);

  fs::create_directories(o.out);
  std::vector<io::PatchRecord> records;
  for (const io::SlidePatch& patch : patches) {
    const std::string name = "patch_x" + std::to_string(patch.x) + "_y" + std::to_string(patch.y) + ".png";
    io::write_png(o.resize > 0 ? io::resize(patch.image, o.resize, o.resize) : patch.image, fs::path(o.out) / name);
    io::PatchRecord record;
    record.image = name;
    record.x = patch.x;
    record.y = patch.y;
    records.push_back(std::move(record));
  }
  io::save_manifest(records, fs::path(o.out) / "manifest.json");
  out << "patches: " << records.size() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ExtractOptions {
  std::string manifest;
  std::string features = "combined";
  std::string offsets;
  std::string radii;
  std::string split = "all";
  std::string out;
};

FeatureConfig extract_config(const ExtractOptions& o) {
  FeatureConfig config;
  if (o.features == "combined") {
    config = FeatureConfig::combined();
  } else if (o.features == "glcm") {
    config = FeatureConfig::glcm_only();
  } else if (o.features == "lbp") {
    config = FeatureConfig::lbp_only();
  } else {
    throw InvalidArgument("--features must be glcm, lbp or combined");
  }
  if (!o.offsets.empty()) {
    if (o.features == "lbp") throw InvalidArgument("--offsets needs GLCM features");
    config.glcmOffsets = parse_offsets(o.offsets);
  }
  if (!o.radii.empty()) {
    if (o.features == "glcm") throw InvalidArgument("--radii needs LBP features");
    config.lbpRadii = parse_radii(o.radii);
  }
  config.validate();
  return config;
}

/// Record label, or the majority labeled class of its mask (ties to gland).
ClassLabel record_label(const io::PatchRecord& record, const fs::path& manifest, std::size_t index) {
  if (record.label) return *record.label;
  if (!record.mask)
    throw DataError("manifest record " + std::to_string(index) + " has neither a label nor a mask");
  const LabelMask mask = io::read_mask(io::resolve_reference(manifest, *record.mask));
  const auto& raw = mask.raw();
  const Index gland = (raw.array() == static_cast<std::uint8_t>(Label::Gland)).count();
  const Index stroma = (raw.array() == static_cast<std::uint8_t>(Label::Stroma)).count();
  if (gland + stroma == 0) throw DataError("manifest record " + std::to_string(index) + ": mask has no labeled pixels");
  return gland >= stroma ? ClassLabel::Gland : ClassLabel::Stroma;
}

int run_extract(const ExtractOptions& o, std::ostream& out) {
  if (o.split != "all" && o.split != "train" && o.split != "test")
    throw InvalidArgument("--split must be train, test or all");
  const FeatureConfig config = extract_config(o);
  const std::vector<io::PatchRecord> records = io::load_manifest(o.manifest);

  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const bool train = records[i].split == io::Split::Train;
    if (o.split == "all" || (o.split == "train") == train) selected.push_back(i);
  }
  if (selected.empty()) throw DataError("no manifest records match --split " + o.split);

  Dataset dataset;
  dataset.columns = config.column_names();
  dataset.featureConfig = config;
  dataset.features.resize(static_cast<Index>(selected.size()), static_cast<Index>(dataset.columns.size()));
  for (std::size_t row = 0; row < selected.size(); ++row) {
    const io::PatchRecord& record = records[selected[row]];
    const GrayRaster patch = io::read_gray(io::resolve_reference(o.manifest, record.image));
    dataset.features.row(static_cast<Index>(row)) = patch_features(patch, config).values.transpose();
    dataset.labels.push_back(record_label(record, o.manifest, selected[row]));
  }
  io::write_feature_csv(dataset, o.out);
  out << "samples: " << dataset.size() << " (gland " << dataset.count(ClassLabel::Gland) << ", stroma "
      << dataset.count(ClassLabel::Stroma) << "), columns: " << dataset.dimension() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct TrainOptions {
  std::string features;
  std::string model = "svm";
  Index pca = 0;
  std::string cv;
  std::uint64_t seed = 0;
  std::string out;
  int k = 1;
  double lambda = 1e-3;
  int epochs = 200;
  std::string cvReport;
};

void print_cv(const CvReport& report, std::ostream& out) {
  out << "cross-validation " << describe(report.protocol) << " seed " << report.seed << "\n";
  for (std::size_t i = 0; i < report.folds.size(); ++i) {
    const FoldResult& f = report.folds[i];
    out << "  fold " << i + 1 << ": train " << f.trainSize << ", validate " << f.validation.size()
        << ", accuracy " << f.accuracy << "\n";
  }
  out << "  mean accuracy " << report.meanAccuracy << " (tp " << report.pooled.tp << ", tn " << report.pooled.tn
      << ", fp " << report.pooled.fp << ", fn " << report.pooled.fn << ")\n";
}

int run_train(const TrainOptions& o, std::ostream& out) {
  TrainSpec spec;
  spec.kind = parse_classifier_kind(o.model);
  spec.k = o.k;
  spec.lambda = o.lambda;
  spec.epochs = o.epochs;
  spec.seed = o.seed;
  if (o.pca < 0) throw InvalidArgument("--pca must be positive");
  if (o.pca > 0) spec.pca = ComponentCount{o.pca};
  if (!o.cvReport.empty() && o.cv.empty()) throw InvalidArgument("--cv-report needs --cv");
  const std::optional<CvProtocol> protocol = o.cv.empty() ? std::nullopt : std::optional(parse_cv(o.cv));

  const Dataset dataset = io::read_feature_csv(o.features);
  if (protocol) {
    const CvReport report = cross_validate(dataset, spec, *protocol, o.seed);
    print_cv(report, out);
    if (!o.cvReport.empty()) io::write_text_atomic(o.cvReport, io::format_cv_report(report));
  }
  const ClassifierModel model = train_classifier(dataset, spec);
  io::save_model(model, o.out);
  out << "model " << to_string(model.kind) << " trained on " << model.trainingSamples << " samples, "
      << model.input_dimension() << " features -> " << model.model_dimension() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SegmentOptions {
  std::string image;
  std::string model;
  int window = 35;
  int stride = 1;
  int workers = 1;
  std::string out;
  std::string overlay;
  double alpha = 0.5;
};

int run_segment(const SegmentOptions& o, std::ostream& out) {
  if (!(o.alpha >= 0 && o.alpha <= 1)) throw InvalidArgument("--alpha must be in [0, 1]");
  SegmentationConfig config;
  config.windowSize = o.window;
  config.stride = o.stride;
  config.workers = o.workers;
  config.validate();

  const ClassifierModel model = io::load_model(o.model);
  if (!model.featureConfig) throw DataError(o.model + ": model has no texture feature config");
  const io::DecodedImage decoded = io::read_image(o.image);
  SegmentationStats stats;
  const LabelMask mask = segment_image(io::to_gray(decoded), model, config, &stats);
  io::write_mask(mask, o.out);
  if (!o.overlay.empty()) io::write_png(render_overlay(io::to_rgb(decoded), mask, o.alpha), o.overlay);
  out << "segmented " << mask.width() << "x" << mask.height() << " (" << stats.windowsEvaluated << " windows)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EvaluateOptions {
  std::string pred;
  std::string gt;
  double tolerance = -1;
  std::string out;
};

int run_evaluate(const EvaluateOptions& o, std::ostream& out) {
  const LabelMask pred = io::read_mask(o.pred);
  const LabelMask gt = io::read_mask(o.gt);
  if (pred.width() != gt.width() || pred.height() != gt.height())
    throw DataError("prediction and ground truth differ in size");
  const SegmentationReport report = evaluate(pred, gt, BoundaryConfig{o.tolerance});
  if (!o.out.empty()) io::save_report(report, o.out);
  out << "gland  dice " << report.classes[0].dice << " jaccard " << report.classes[0].jaccard << " bf "
      << report.classes[0].bfScore << "\n"
      << "stroma dice " << report.classes[1].dice << " jaccard " << report.classes[1].jaccard << " bf "
      << report.classes[1].bfScore << "\n"
      << "global accuracy " << report.globalAccuracy << ", mean IoU " << report.meanIoU << ", weighted IoU "
      << report.weightedIoU << ", mean BF " << report.meanBFScore << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ServeOptions {
  std::string addr = "127.0.0.1:8080";
  std::string models;
  int workers = 1;
  int queue = 4;
};

int run_serve(const ServeOptions& o, std::ostream& out) {
  ServiceConfig config;
  std::tie(config.host, config.port) = parse_address(o.addr);
  config.workers = o.workers;
  config.queueDepth = o.queue;
  config.validate();

  // Signals are taken synchronously by one thread; server threads inherit the mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  SegmentationService service(ModelRegistry::load_directory(o.models), config);
  const int port = service.bind();
  out << "serving on " << config.host << ":" << port << "\n" << std::flush;
  std::jthread waiter([&] {
    int received = 0;
    sigwait(&signals, &received);
    service.stop();
  });
  service.run();
  // Unblocks the waiter when run() ended for another reason.
  pthread_kill(waiter.native_handle(), SIGTERM);
  return kExitOk;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::configure_logging();
  CLI::App app{"Gland/stroma texture segmentation toolkit", "glandseg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "glandseg 0.1.0");

  PatchifyOptions patchify;
  auto* cmd = app.add_subcommand("patchify", "Cut a slide image into tissue patches and write a manifest");
  cmd->add_option("--slide", patchify.slide, "Slide image (PNG or JPEG)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--size", patchify.size, "Patch side length in slide pixels")->capture_default_str();
  cmd->add_option("--min-tissue", patchify.minTissue, "Minimum tissue fraction")->capture_default_str();
  cmd->add_option("--resize", patchify.resize, "Output side length, 0 keeps the patch size")->capture_default_str();
  cmd->add_option("--out", patchify.out, "Output directory")->required();

  ExtractOptions extract;
  cmd = app.add_subcommand("extract", "Compute texture features for manifest patches");
  cmd->add_option("--manifest", extract.manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--features", extract.features, "glcm, lbp or combined")->capture_default_str();
  cmd->add_option("--offsets", extract.offsets, "GLCM offsets as DELTA:DEGREES list, e.g. 1:0,2:45");
  cmd->add_option("--radii", extract.radii, "LBP radii list, e.g. 1,2,4");
  cmd->add_option("--split", extract.split, "train, test or all")->capture_default_str();
  cmd->add_option("--out", extract.out, "Feature CSV")->required();

  TrainOptions train;
  cmd = app.add_subcommand("train", "Train a classifier on a feature CSV");
  cmd->add_option("--features", train.features, "Feature CSV")->required()->check(CLI::ExistingFile);
  cmd->add_option("--model", train.model, "svm, knn or nb")->capture_default_str();
  cmd->add_option("--pca", train.pca, "Keep this many principal components");
  cmd->add_option("--cv", train.cv, "kfold:K or holdout:R");
  cmd->add_option("--seed", train.seed, "Random seed")->capture_default_str();
  cmd->add_option("--k", train.k, "KNN neighbours")->capture_default_str();
  cmd->add_option("--lambda", train.lambda, "SVM regularization")->capture_default_str();
  cmd->add_option("--epochs", train.epochs, "SVM epochs")->capture_default_str();
  cmd->add_option("--cv-report", train.cvReport, "Write the cross-validation report here");
  cmd->add_option("--out", train.out, "Model file")->required();

  SegmentOptions segment;
  cmd = app.add_subcommand("segment", "Label every pixel of an image as gland or stroma");
  cmd->add_option("--image", segment.image, "Input image")->required()->check(CLI::ExistingFile);
  cmd->add_option("--model", segment.model, "Model file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--window", segment.window, "Odd window side length")->capture_default_str();
  cmd->add_option("--stride", segment.stride, "Classify every Nth pixel")->capture_default_str();
  cmd->add_option("--workers", segment.workers, "Worker threads")->capture_default_str();
  cmd->add_option("--alpha", segment.alpha, "Overlay opacity")->capture_default_str();
  cmd->add_option("--out", segment.out, "Mask PNG")->required();
  cmd->add_option("--overlay", segment.overlay, "Overlay PNG");

  EvaluateOptions evaluate_opts;
  cmd = app.add_subcommand("evaluate", "Score a predicted mask against ground truth");
  cmd->add_option("--pred", evaluate_opts.pred, "Predicted mask PNG")->required()->check(CLI::ExistingFile);
  cmd->add_option("--gt", evaluate_opts.gt, "Ground-truth mask PNG")->required()->check(CLI::ExistingFile);
  cmd->add_option("--tolerance", evaluate_opts.tolerance, "Boundary tolerance in pixels (default 0.75% of diagonal)");
  cmd->add_option("--out", evaluate_opts.out, "Report file");

  ServeOptions serve;
  cmd = app.add_subcommand("serve", "Run the HTTP segmentation service");
  cmd->add_option("--addr", serve.addr, "HOST:PORT")->capture_default_str();
  cmd->add_option("--models", serve.models, "Directory of model files")->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--workers", serve.workers, "Concurrent segmentations")->capture_default_str();
  cmd->add_option("--queue", serve.queue, "Requests allowed to wait")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "patchify") return run_patchify(patchify, out);
    if (name == "extract") return run_extract(extract, out);
    if (name == "train") return run_train(train, out);
    if (name == "segment") return run_segment(segment, out);
    if (name == "evaluate") return run_evaluate(evaluate_opts, out);
    return run_serve(serve, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

int cli_run(const std::vector<std::string>& args) { return cli_run(args, std::cout, std::cerr); }

}  // namespace glandseg
