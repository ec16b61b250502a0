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

#include "glandseg/service.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <condition_variable>
#include <mutex>

#include <httplib.h>
#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include "glandseg/io/documents.hpp"
#include "glandseg/io/image_codec.hpp"
#include "glandseg/io/model_file.hpp"
#include "glandseg/io/report_file.hpp"
#include "glandseg/segmentation.hpp"
#include "logging.hpp"

namespace glandseg {

using io::Json;

// ---------------------------------------------------------------------------
// Registry

ModelRegistry ModelRegistry::load_directory(const std::filesystem::path& directory) {
  std::error_code ec;
  if (!std::filesystem::is_directory(directory, ec))
    throw DataError("model directory not found: " + directory.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  ModelRegistry registry;
  for (const auto& file : files) {
    ClassifierModel model = io::load_model(file);
    if (!model.featureConfig)
      throw DataError(file.string() + ": model carries no feature config and cannot segment images");
    registry.add(file.stem().string(), std::move(model));
  }
  if (registry.size() == 0) throw DataError("no model files (*.json) in " + directory.string());
  return registry;
}

void ModelRegistry::add(std::string id, ClassifierModel model) {
  if (id.empty()) throw InvalidArgument("ModelRegistry: empty model id");
  if (!model.featureConfig) throw InvalidArgument("ModelRegistry: model '" + id + "' has no feature config");
  model.validate();
  if (!models_.emplace(id, std::make_shared<const ClassifierModel>(std::move(model))).second)
    throw InvalidArgument("ModelRegistry: duplicate model id '" + id + "'");
}

const ClassifierModel* ModelRegistry::find(const std::string& id) const {
  const auto it = models_.find(id);
  return it == models_.end() ? nullptr : it->second.get();
}

std::vector<std::string> ModelRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, model] : models_) out.push_back(id);
  return out;
}

void ServiceConfig::validate() const {
  if (workers < 1) throw InvalidArgument("service: workers must be >= 1");
  if (queueDepth < 0) throw InvalidArgument("service: queue depth must be >= 0");
  if (port < 0 || port > 65535) throw InvalidArgument("service: port out of range");
  if (limits.maxFileBytes == 0 || limits.maxRequestBytes < limits.maxFileBytes)
    throw InvalidArgument("service: request limit must cover the file limit");
}

// ---------------------------------------------------------------------------
// Request handling

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
  const int written = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                      static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(written));
  return out;
}

namespace {

constexpr int kServiceWindow = 35;

struct Prepared {
  const ClassifierModel* model;
  RgbImage rgb;
  GrayRaster gray;
};

Prepared prepare(const SegmentRequest& request, const ModelRegistry& models, const ServiceLimits& limits) {
  if (request.image.empty()) throw ServiceError(400, "missing 'image' part");
  if (request.image.size() > limits.maxFileBytes)
    throw ServiceError(413, "image exceeds " + std::to_string(limits.maxFileBytes) + " bytes");
  if (request.modelId.empty()) throw ServiceError(400, "missing 'modelId' part");
  const ClassifierModel* model = models.find(request.modelId);
  if (model == nullptr) throw ServiceError(404, "unknown model '" + request.modelId + "'");
  if (request.stride < 1 || request.stride > kServiceWindow)
    throw ServiceError(400, "stride must be in [1, " + std::to_string(kServiceWindow) + "]");
  if (!(request.alpha >= 0 && request.alpha <= 1)) throw ServiceError(400, "alpha must be in [0, 1]");

  const auto* data = reinterpret_cast<const std::uint8_t*>(request.image.data());
  try {
    const io::DecodedImage decoded =
        io::decode_image({data, request.image.size()}, {limits.maxWidth, limits.maxHeight});
    return {model, io::to_rgb(decoded), io::to_gray(decoded)};
  } catch (const DimensionLimitExceeded& e) {
    throw ServiceError(422, e.what());
  } catch (const DataError& e) {
    throw ServiceError(400, e.what());
  }
}

LabelMask run_segmentation(const Prepared& p, int stride) {
  SegmentationConfig config;
  config.windowSize = kServiceWindow;
  config.stride = stride;
  config.workers = 1;
  return segment_image(p.gray, *p.model, config);
}

}  // namespace

SegmentResponse handle_segment(const SegmentRequest& request, const ModelRegistry& models,
                               const ServiceLimits& limits) {
  const auto start = std::chrono::steady_clock::now();
  const Prepared p = prepare(request, models, limits);
  const LabelMask mask = run_segmentation(p, request.stride);

  SegmentResponse response;
  response.modelId = request.modelId;
  response.width = mask.width();
  response.height = mask.height();
  response.maskPng = io::encode_mask(mask);
  response.overlayPng = io::encode_png(render_overlay(p.rgb, mask, request.alpha));
  response.timingMs =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return response;
}

SegmentationReport handle_evaluate(const SegmentRequest& request, const std::string& maskPng,
                                   const ModelRegistry& models, const ServiceLimits& limits) {
  if (maskPng.empty()) throw ServiceError(400, "missing 'mask' part");
  if (maskPng.size() > limits.maxFileBytes)
    throw ServiceError(413, "mask exceeds " + std::to_string(limits.maxFileBytes) + " bytes");
  const Prepared p = prepare(request, models, limits);
  LabelMask gt;
  try {
    gt = io::decode_mask({reinterpret_cast<const std::uint8_t*>(maskPng.data()), maskPng.size()});
  } catch (const DataError& e) {
    throw ServiceError(400, std::string("mask: ") + e.what());
  }
  if (gt.width() != p.gray.cols() || gt.height() != p.gray.rows())
    throw ServiceError(400, "mask dimensions differ from the image");
  return evaluate(run_segmentation(p, request.stride), gt);
}

// ---------------------------------------------------------------------------
// HTTP

namespace {

/// Bounds admitted requests to workers + queue depth and lets at most
/// `workers` of them compute at once.
class AdmissionGate {
 public:
  AdmissionGate(int workers, int capacity) : workers_(workers), capacity_(capacity) {}

  bool try_admit() {
    std::lock_guard lock(mutex_);
    if (admitted_ >= capacity_) return false;
    ++admitted_;
    return true;
  }
  void acquire_worker() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return running_ < workers_; });
    ++running_;
  }
  void release_worker() {
    {
      std::lock_guard lock(mutex_);
      --running_;
    }
    cv_.notify_one();
  }
  void leave() {
    std::lock_guard lock(mutex_);
    --admitted_;
  }
  int admitted() const {
    std::lock_guard lock(mutex_);
    return admitted_;
  }

 private:
  mutable std::mutex mutex_;
  std::condition_variable cv_;
  int workers_;
  int capacity_;
  int admitted_ = 0;
  int running_ = 0;
};

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"formatVersion", io::kFormatVersion}, {"status", status}, {"error", message}});
}

std::string form_value(const httplib::Request& req, const std::string& name) {
  return req.has_file(name) ? req.get_file_value(name).content : std::string();
}

template <typename T>
T parse_number(const std::string& text, std::string_view field, T fallback) {
  if (text.empty()) return fallback;
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size())
    throw ServiceError(400, "field '" + std::string(field) + "' is not a number");
  return value;
}

SegmentRequest parse_request(const httplib::Request& req) {
  if (!req.is_multipart_form_data()) throw ServiceError(400, "expected multipart/form-data");
  SegmentRequest request;
  request.image = form_value(req, "image");
  request.modelId = form_value(req, "modelId");
  request.stride = parse_number<int>(form_value(req, "stride"), "stride", 1);
  request.alpha = parse_number<double>(form_value(req, "alpha"), "alpha", 0.5);
  return request;
}

}  // namespace

struct SegmentationService::Impl {
  ModelRegistry models;
  ServiceConfig config;
  AdmissionGate gate;
  httplib::Server server;

  Impl(ModelRegistry m, ServiceConfig c)
      : models(std::move(m)), config(std::move(c)), gate(config.workers, config.workers + config.queueDepth) {}

  /// Admission, worker slot and error mapping around one compute request.
  template <typename Body>
  void guarded(const httplib::Request& req, httplib::Response& res, Body body) {
    if (!gate.try_admit()) {
      send_error(res, 503, "server busy, retry later");
      return;
    }
    struct Leave {
      AdmissionGate& gate;
      ~Leave() { gate.leave(); }
    } leave{gate};
    try {
      SegmentRequest request = parse_request(req);
      // Cheap rejections do not wait for a worker.
      if (request.image.size() > config.limits.maxFileBytes)
        throw ServiceError(413, "image exceeds " + std::to_string(config.limits.maxFileBytes) + " bytes");
      if (!request.modelId.empty() && models.find(request.modelId) == nullptr)
        throw ServiceError(404, "unknown model '" + request.modelId + "'");
      gate.acquire_worker();
      struct Release {
        AdmissionGate& gate;
        ~Release() { gate.release_worker(); }
      } release{gate};
      body(request, res);
    } catch (const ServiceError& e) {
      send_error(res, e.status(), e.what());
    } catch (const std::exception& e) {
      spdlog::error("{} {}: {}", req.method, req.path, e.what());
      send_error(res, 500, "internal error");
    }
  }

  void install_routes() {
    server.set_payload_max_length(config.limits.maxRequestBytes);
    const std::size_t threads = static_cast<std::size_t>(config.workers + config.queueDepth) + 4;
    server.new_task_queue = [threads] { return new httplib::ThreadPool(threads, 64); };
    server.set_keep_alive_max_count(8);
    server.set_keep_alive_timeout(2);
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

    server.set_logger([](const httplib::Request& req, const httplib::Response& res) {
      spdlog::info("{} {} -> {}", req.method, req.path, res.status);
    });
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty())
        send_error(res, res.status, res.status == 413 ? "request exceeds the payload limit" : "request failed");
    });

    server.Options(R"(/(segment|evaluate))", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
      res.set_header("Access-Control-Allow-Methods", "POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });

    server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200,
                {{"formatVersion", io::kFormatVersion},
                 {"status", "ok"},
                 {"models", models.size()},
                 {"workers", config.workers},
                 {"queueDepth", config.queueDepth},
                 {"inFlight", gate.admitted()}});
    });

    server.Get("/models", [this](const httplib::Request&, httplib::Response& res) {
      Json list = Json::array();
      for (const std::string& id : models.ids()) {
        const ClassifierModel& m = *models.find(id);
        list.push_back({{"modelId", id},
                        {"kind", to_string(m.kind)},
                        {"featureConfig", io::to_json(*m.featureConfig)},
                        {"columns", m.columns},
                        {"trainingSamples", m.trainingSamples}});
      }
      send_json(res, 200, {{"formatVersion", io::kFormatVersion}, {"models", list}});
    });

    server.Post("/segment", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(req, res, [&](const SegmentRequest& request, httplib::Response& out) {
        const SegmentResponse r = handle_segment(request, models, config.limits);
        send_json(out, 200,
                  {{"formatVersion", io::kFormatVersion},
                   {"modelId", r.modelId},
                   {"width", r.width},
                   {"height", r.height},
                   {"stride", request.stride},
                   {"alpha", request.alpha},
                   {"maskPng", base64_encode(r.maskPng)},
                   {"overlayPng", base64_encode(r.overlayPng)},
                   {"timingMs", r.timingMs}});
      });
    });

    server.Post("/evaluate", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(req, res, [&](const SegmentRequest& request, httplib::Response& out) {
        const SegmentationReport report =
            handle_evaluate(request, form_value(req, "mask"), models, config.limits);
        out.status = 200;
        out.set_content(io::format_report(report), "application/json");
      });
    });
  }
};

SegmentationService::SegmentationService(ModelRegistry models, ServiceConfig config) {
  detail::configure_logging();
  config.validate();
  if (models.size() == 0) throw InvalidArgument("service: no models loaded");
  impl_ = std::make_unique<Impl>(std::move(models), std::move(config));
  impl_->install_routes();
}

SegmentationService::~SegmentationService() { stop(); }

int SegmentationService::bind() {
  auto& cfg = impl_->config;
  if (cfg.port == 0) {
    const int port = impl_->server.bind_to_any_port(cfg.host);
    if (port < 0) throw DataError("cannot bind " + cfg.host);
    cfg.port = port;
  } else if (!impl_->server.bind_to_port(cfg.host, cfg.port)) {
    throw DataError("cannot bind " + cfg.host + ":" + std::to_string(cfg.port));
  }
  spdlog::info("listening on {}:{}", cfg.host, cfg.port);
  return cfg.port;
}

void SegmentationService::run() { impl_->server.listen_after_bind(); }

void SegmentationService::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void SegmentationService::wait_until_ready() const { impl_->server.wait_until_ready(); }

int SegmentationService::in_flight() const { return impl_->gate.admitted(); }

}  // namespace glandseg
