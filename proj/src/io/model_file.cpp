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

#include "glandseg/io/model_file.hpp"

#include "glandseg/io/image_codec.hpp"

namespace glandseg::io {
namespace {

Json vector_json(const auto& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) rows.push_back(vector_json(m.row(r)));
  return rows;
}

Eigen::VectorXd vector_from(const Json& j, std::string_view field) {
  if (!j.is_array()) throw DataError("model: field '" + std::string(field) + "' must be an array");
  Eigen::VectorXd v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw DataError("model: field '" + std::string(field) + "' holds a non-number");
    v(static_cast<Index>(i)) = j[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd matrix_from(const Json& j, std::string_view field, Index cols) {
  if (!j.is_array()) throw DataError("model: field '" + std::string(field) + "' must be an array of rows");
  Eigen::MatrixXd m(static_cast<Index>(j.size()), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Eigen::VectorXd row = vector_from(j[r], field);
    if (row.size() != cols) throw DataError("model: field '" + std::string(field) + "' has a ragged row");
    m.row(static_cast<Index>(r)) = row.transpose();
  }
  return m;
}

Json train_spec_json(const TrainSpec& spec) {
  Json j = {{"kind", to_string(spec.kind)},
            {"k", spec.k},
            {"lambda", spec.lambda},
            {"epochs", spec.epochs},
            {"seed", spec.seed}};
  if (spec.pca) {
    if (const auto* count = std::get_if<ComponentCount>(&*spec.pca))
      j["pca"] = {{"components", count->count}};
    else
      j["pca"] = {{"varianceFraction", std::get<VarianceFraction>(*spec.pca).fraction}};
  }
  return j;
}

TrainSpec train_spec_from(const Json& j) {
  TrainSpec spec;
  spec.kind = parse_classifier_kind(j.at("kind").get<std::string>());
  spec.k = j.at("k").get<int>();
  spec.lambda = j.at("lambda").get<double>();
  spec.epochs = j.at("epochs").get<int>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  if (const auto p = j.find("pca"); p != j.end()) {
    if (p->contains("components"))
      spec.pca = ComponentCount{p->at("components").get<Index>()};
    else
      spec.pca = VarianceFraction{p->at("varianceFraction").get<double>()};
  }
  return spec;
}

}  // namespace

Json model_to_json(const ClassifierModel& model) {
  model.validate();
  Json j;
  j["kind"] = to_string(model.kind);
  j["columns"] = model.columns;
  j["trainSpec"] = train_spec_json(model.spec);
  j["trainingSamples"] = model.trainingSamples;
  j["createdBy"] = "glandseg";
  j["standardizer"] = {{"mean", vector_json(model.standardizer.mean)},
                       {"stdDev", vector_json(model.standardizer.stdDev)}};
  j["featureConfig"] = model.featureConfig ? to_json(*model.featureConfig) : Json(nullptr);
  if (model.pca) {
    j["pca"] = {{"columnMeans", vector_json(model.pca->columnMeans)},
                {"components", matrix_json(model.pca->components)},
                {"explainedVarianceRatio", vector_json(model.pca->explainedVarianceRatio)}};
  } else {
    j["pca"] = nullptr;
  }
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, KnnParameters>) {
          Json labels = Json::array();
          for (ClassLabel l : p.labels) labels.push_back(to_string(l));
          j["parameters"] = {{"k", p.k}, {"rows", matrix_json(p.rows)}, {"labels", labels}};
        } else if constexpr (std::is_same_v<T, GaussianNbParameters>) {
          j["parameters"] = {{"logPriors", vector_json(p.logPriors)},
                             {"means", matrix_json(p.means)},
                             {"variances", matrix_json(p.variances)}};
        } else {
          j["parameters"] = {{"weights", vector_json(p.weights)}, {"bias", p.bias}};
        }
      },
      model.parameters);
  return j;
}

ClassifierModel model_from_json(const Json& j) {
  try {
    ClassifierModel model;
    model.kind = parse_classifier_kind(j.at("kind").get<std::string>());
    model.columns = j.at("columns").get<std::vector<std::string>>();
    model.spec = train_spec_from(j.at("trainSpec"));
    model.trainingSamples = j.at("trainingSamples").get<Index>();
    const Json& standardizer = j.at("standardizer");
    model.standardizer.mean = vector_from(standardizer.at("mean"), "standardizer.mean").transpose();
    model.standardizer.stdDev = vector_from(standardizer.at("stdDev"), "standardizer.stdDev").transpose();
    if (!j.at("featureConfig").is_null()) model.featureConfig = feature_config_from_json(j.at("featureConfig"));

    const Index d = model.standardizer.mean.size();
    if (const Json& pca = j.at("pca"); !pca.is_null()) {
      PcaModel p;
      p.columnMeans = vector_from(pca.at("columnMeans"), "pca.columnMeans").transpose();
      p.components = matrix_from(pca.at("components"), "pca.components", d);
      p.explainedVarianceRatio = vector_from(pca.at("explainedVarianceRatio"), "pca.explainedVarianceRatio");
      model.pca = std::move(p);
    }
    const Index m = model.model_dimension();
    const Json& params = j.at("parameters");
    switch (model.kind) {
      case ClassifierKind::Knn: {
        KnnParameters p;
        p.k = params.at("k").get<int>();
        p.rows = matrix_from(params.at("rows"), "parameters.rows", m);
        for (const Json& l : params.at("labels")) p.labels.push_back(parse_class_label(l.get<std::string>()));
        model.parameters = std::move(p);
        break;
      }
      case ClassifierKind::GaussianNb: {
        GaussianNbParameters p;
        const Eigen::VectorXd priors = vector_from(params.at("logPriors"), "parameters.logPriors");
        if (priors.size() != 2) throw DataError("model: logPriors must hold two values");
        p.logPriors = priors;
        p.means = matrix_from(params.at("means"), "parameters.means", m);
        p.variances = matrix_from(params.at("variances"), "parameters.variances", m);
        model.parameters = std::move(p);
        break;
      }
      case ClassifierKind::LinearSvm:
        model.parameters = LinearSvmParameters{vector_from(params.at("weights"), "parameters.weights"),
                                               params.at("bias").get<double>()};
        break;
    }
    model.validate();
    return model;
  } catch (const Json::exception& e) {
    throw DataError(std::string("model: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("model: ") + e.what());
  }
}

std::string format_model(const ClassifierModel& model) { return seal_document(kModelKind, model_to_json(model)); }

ClassifierModel parse_model(std::string_view text) { return model_from_json(open_document(text, kModelKind)); }

void save_model(const ClassifierModel& model, const std::filesystem::path& path) {
  write_text_atomic(path, format_model(model));
}

ClassifierModel load_model(const std::filesystem::path& path) {
  try {
    return parse_model(read_text(path));
  } catch (const IntegrityError& e) {
    throw IntegrityError(path.string() + ": " + e.what());
  } catch (const UnsupportedVersion& e) {
    throw UnsupportedVersion(path.string() + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace glandseg::io
