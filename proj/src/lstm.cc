#include "homophony/lstm.h"

#include <fstream>

namespace homophony {

namespace {

constexpr int kFileVersion = 1;

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

double finite_number(const nlohmann::json& v, const std::string& what) {
  if (!v.is_number()) throw LstmNonFiniteError("lstm: non-numeric entry in " + what);
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw LstmNonFiniteError("lstm: non-finite weight in " + what);
  return x;
}

Matrix read_matrix(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols,
                   const std::string& what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw LstmDimensionError("lstm: " + what + " must have " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw LstmDimensionError("lstm: " + what + " must have " + std::to_string(cols) +
                               " columns");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = finite_number(row[c], what);
  }
  return m;
}

Vector read_vector(const nlohmann::json& j, Eigen::Index size, const std::string& what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != size) {
    throw LstmDimensionError("lstm: " + what + " must have " + std::to_string(size) + " entries");
  }
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = finite_number(j[i], what);
  return v;
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return rows;
}

nlohmann::json vector_json(const Vector& v) { return std::vector<double>(v.begin(), v.end()); }

}  // namespace

LstmModel::LstmModel(Alphabet alphabet, LstmWeights<double> weights)
    : alphabet_(std::move(alphabet)), weights_(std::move(weights)) {
  const int p = alphabet_.size();
  const int e = weights_.embed_dim;
  const int d = weights_.hidden_dim;
  if (e < 1 || d < 1 || weights_.num_layers() < 1) {
    throw LstmDimensionError("lstm: dimensions must be positive");
  }
  if (weights_.embedding.rows() != p + 1 || weights_.embedding.cols() != e) {
    throw LstmDimensionError("lstm: embedding shape mismatch");
  }
  for (int l = 0; l < weights_.num_layers(); ++l) {
    const auto& layer = weights_.layers[l];
    const int in = l == 0 ? e : d;
    if (layer.w_ih.rows() != 4 * d || layer.w_ih.cols() != in || layer.w_hh.rows() != 4 * d ||
        layer.w_hh.cols() != d || layer.b_ih.size() != 4 * d || layer.b_hh.size() != 4 * d) {
      throw LstmDimensionError("lstm: layer " + std::to_string(l) + " shape mismatch");
    }
  }
  if (weights_.out_w.rows() != p + 1 || weights_.out_w.cols() != d || weights_.out_b.size() != p + 1) {
    throw LstmDimensionError("lstm: output projection shape mismatch");
  }
}

LstmModel LstmModel::from_json(const nlohmann::json& j) {
  try {
    if (!j.contains("version") || !j["version"].is_number_integer() ||
        j["version"].get<int>() != kFileVersion) {
      throw LstmVersionError("lstm: unknown weight file version");
    }
    Alphabet alphabet(j.at("alphabet").at("phones").get<std::vector<std::string>>());
    const int p = alphabet.size();
    LstmWeights<double> w;
    w.embed_dim = j.at("embed_dim").get<int>();
    w.hidden_dim = j.at("hidden_dim").get<int>();
    const int num_layers = j.at("layers").get<int>();
    const int e = w.embed_dim;
    const int d = w.hidden_dim;
    if (e < 1 || d < 1 || num_layers < 1) throw LstmDimensionError("lstm: dimensions must be positive");
    const auto& layers = j.at("lstm");
    if (!layers.is_array() || static_cast<int>(layers.size()) != num_layers) {
      throw LstmDimensionError("lstm: number of layer blocks does not match 'layers'");
    }
    w.embedding = read_matrix(j.at("embedding"), p + 1, e, "embedding");
    for (int l = 0; l < num_layers; ++l) {
      const std::string tag = "lstm[" + std::to_string(l) + "].";
      const int in = l == 0 ? e : d;
      const auto& lj = layers[l];
      w.layers.push_back({read_matrix(lj.at("w_ih"), 4 * d, in, tag + "w_ih"),
                          read_matrix(lj.at("w_hh"), 4 * d, d, tag + "w_hh"),
                          read_vector(lj.at("b_ih"), 4 * d, tag + "b_ih"),
                          read_vector(lj.at("b_hh"), 4 * d, tag + "b_hh")});
    }
    w.out_w = read_matrix(j.at("out_w"), p + 1, d, "out_w");
    w.out_b = read_vector(j.at("out_b"), p + 1, "out_b");
    return LstmModel(std::move(alphabet), std::move(w));
  } catch (const nlohmann::json::exception& e) {
    throw LstmFormatError(std::string("lstm: malformed weight file: ") + e.what());
  }
}

LstmModel LstmModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open weight file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw LstmFormatError("lstm: " + path + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json LstmModel::to_json() const {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : weights_.layers) {
    layers.push_back({{"w_ih", matrix_json(l.w_ih)},
                      {"w_hh", matrix_json(l.w_hh)},
                      {"b_ih", vector_json(l.b_ih)},
                      {"b_hh", vector_json(l.b_hh)}});
  }
  return {{"version", kFileVersion},
          {"alphabet", {{"phones", alphabet_.phones()}}},
          {"embed_dim", weights_.embed_dim},
          {"hidden_dim", weights_.hidden_dim},
          {"layers", weights_.num_layers()},
          {"embedding", matrix_json(weights_.embedding)},
          {"lstm", layers},
          {"out_w", matrix_json(weights_.out_w)},
          {"out_b", vector_json(weights_.out_b)}};
}

void LstmModel::feed(RecurrentState& state, int input_row) const {
  const Vector x = weights_.embedding.row(input_row).transpose();
  for (int l = 0; l < weights_.num_layers(); ++l) {
    if (l == 0) {
      lstm_cell(weights_.layers[l], x, state.h[l], state.c[l]);
    } else {
      const Vector below = state.h[l - 1];
      lstm_cell(weights_.layers[l], below, state.h[l], state.c[l]);
    }
  }
}

ModelState LstmModel::initial_state() const {
  RecurrentState state;
  for (int l = 0; l < weights_.num_layers(); ++l) {
    state.h.push_back(Vector::Zero(weights_.hidden_dim));
    state.c.push_back(Vector::Zero(weights_.hidden_dim));
  }
  feed(state, alphabet_.bow());
  return state;
}

void LstmModel::advance(ModelState& state, int phone) const {
  if (phone < 0 || phone >= alphabet_.size()) throw DataError("lstm: input is not a phone");
  feed(std::get<RecurrentState>(state), phone);
}

void LstmModel::next_log_probs(const ModelState& state, Eigen::VectorXd& out) const {
  const auto& s = std::get<RecurrentState>(state);
  const Vector logits = weights_.out_w * s.h.back() + weights_.out_b;
  const double hi = logits.maxCoeff();
  const double log_z = hi + std::log((logits.array() - hi).exp().sum());
  out = (logits.array() - log_z) / std::log(2.0);
}

}  // namespace homophony
