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


#ifndef GLANDSEG_SERVICE_HPP
#define GLANDSEG_SERVICE_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glandseg/error.hpp"
#include "glandseg/metrics.hpp"
#include "glandseg/ml.hpp"

namespace glandseg {

/// Immutable set of models keyed by id, shared by all request handlers.
class ModelRegistry {
 public:
  ModelRegistry() = default;

  /// Loads every "*.json" file in `directory`; the id is the file stem. Any
  /// invalid file, a model without a feature config, or an empty directory
  /// raises DataError.
  static ModelRegistry load_directory(const std::filesystem::path& directory);

  /// Throws InvalidArgument when the id is taken or the model has no feature config.
  void add(std::string id, ClassifierModel model);
  const ClassifierModel* find(const std::string& id) const;
  std::vector<std::string> ids() const;
  std::size_t size() const { return models_.size(); }

 private:
  std::map<std::string, std::shared_ptr<const ClassifierModel>> models_;
};

struct ServiceLimits {
  std::size_t maxFileBytes = 4u << 20;
  /// Whole-request cap enforced by the HTTP layer.
  std::size_t maxRequestBytes = (8u << 20) + (64u << 10);
  Index maxWidth = 1024;
  Index maxHeight = 1024;
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  /// Concurrent segmentations.
  int workers = 1;
  /// Admitted requests allowed to wait for a worker; beyond that, 503.
  int queueDepth = 4;
  ServiceLimits limits;

  void validate() const;
};

/// Request failure carrying the HTTP status it maps to.
class ServiceError : public Error {
 public:
  ServiceError(int status, const std::string& message) : Error(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

struct SegmentRequest {
  std::string image;
  std::string modelId;
  int stride = 1;
  double alpha = 0.5;
};

struct SegmentResponse {
  std::string modelId;
  Index width = 0;
  Index height = 0;
  std::vector<std::uint8_t> maskPng;
  std::vector<std::uint8_t> overlayPng;
  double timingMs = 0;
};

/// Transport-independent request handling; throws ServiceError.
SegmentResponse handle_segment(const SegmentRequest& request, const ModelRegistry& models,
                               const ServiceLimits& limits);
SegmentationReport handle_evaluate(const SegmentRequest& request, const std::string& maskPng,
                                   const ModelRegistry& models, const ServiceLimits& limits);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);

/// HTTP front end: GET /health, GET /models, POST /segment, POST /evaluate.
class SegmentationService {
 public:
  SegmentationService(ModelRegistry models, ServiceConfig config);
  ~SegmentationService();
  SegmentationService(const SegmentationService&) = delete;
  SegmentationService& operator=(const SegmentationService&) = delete;

  /// Binds host:port (port 0 picks a free one) and returns the bound port.
  int bind();
  /// Serves until stop(); requires bind().
  void run();
  void stop();
  /// Blocks until run() accepts connections.
  void wait_until_ready() const;

  /// Requests admitted and not yet finished (waiting or computing).
  int in_flight() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace glandseg

#endif  // GLANDSEG_SERVICE_HPP
