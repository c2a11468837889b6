#ifndef HOMOPHONY_LSTM_H_
#define HOMOPHONY_LSTM_H_

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

#include "homophony/lm.h"

namespace homophony {

class LstmFormatError : public DataError {
 public:
  using DataError::DataError;
};
class LstmVersionError : public LstmFormatError {
 public:
  using LstmFormatError::LstmFormatError;
};
class LstmDimensionError : public LstmFormatError {
 public:
  using LstmFormatError::LstmFormatError;
};
class LstmNonFiniteError : public LstmFormatError {
 public:
  using LstmFormatError::LstmFormatError;
};

template <typename Scalar>
struct LstmLayer {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  // Gate blocks stacked along rows in the order i, f, g, o.
  Matrix w_ih;  // [4d x in]
  Matrix w_hh;  // [4d x d]
  Vector b_ih;  // [4d]
  Vector b_hh;  // [4d]
};

// Weights of a character-level LSTM language model. Inputs are phones plus
// BOW (row |phones| of the embedding); outputs are phones plus EOW.
template <typename Scalar>
struct LstmWeights {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  int embed_dim = 64;
  int hidden_dim = 256;
  Matrix embedding;  // [V_in x e]
  std::vector<LstmLayer<Scalar>> layers;
  Matrix out_w;  // [V_out x d]
  Vector out_b;  // [V_out]

  int num_layers() const { return static_cast<int>(layers.size()); }

  static LstmWeights zeros(int num_phones, int embed_dim, int hidden_dim, int num_layers) {
    LstmWeights w;
    w.embed_dim = embed_dim;
    w.hidden_dim = hidden_dim;
    w.embedding = Matrix::Zero(num_phones + 1, embed_dim);
    for (int l = 0; l < num_layers; ++l) {
      const int in = l == 0 ? embed_dim : hidden_dim;
      w.layers.push_back({Matrix::Zero(4 * hidden_dim, in), Matrix::Zero(4 * hidden_dim, hidden_dim),
                          Vector::Zero(4 * hidden_dim), Vector::Zero(4 * hidden_dim)});
    }
    w.out_w = Matrix::Zero(num_phones + 1, hidden_dim);
    w.out_b = Vector::Zero(num_phones + 1);
    return w;
  }
};

// One LSTM cell update; h and c are updated in place.
template <typename Scalar, typename InputDerived>
void lstm_cell(const LstmLayer<Scalar>& layer, const Eigen::MatrixBase<InputDerived>& x,
               Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& h,
               Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& c) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index d = h.size();
  const Vector a = layer.w_ih * x + layer.b_ih + layer.w_hh * h + layer.b_hh;
  auto sigmoid = [](Scalar v) { return Scalar(1) / (Scalar(1) + std::exp(-v)); };
  auto tanh = [](Scalar v) { return std::tanh(v); };
  const Vector i = a.segment(0, d).unaryExpr(sigmoid);
  const Vector f = a.segment(d, d).unaryExpr(sigmoid);
  const Vector g = a.segment(2 * d, d).unaryExpr(tanh);
  const Vector o = a.segment(3 * d, d).unaryExpr(sigmoid);
  c = f.cwiseProduct(c) + i.cwiseProduct(g);
  h = o.cwiseProduct(c.unaryExpr(tanh));
}

// Inference-only LSTM phonotactic model; dropout is a training concern and
// has no representation here.
class LstmModel final : public PhonotacticModel {
 public:
  LstmModel(Alphabet alphabet, LstmWeights<double> weights);

  static LstmModel from_json(const nlohmann::json& j);
  static LstmModel load(const std::string& path);
  nlohmann::json to_json() const;

  const Alphabet& alphabet() const override { return alphabet_; }
  ModelState initial_state() const override;
  void advance(ModelState& state, int phone) const override;
  using PhonotacticModel::next_log_probs;
  void next_log_probs(const ModelState& state, Eigen::VectorXd& out) const override;
  std::string kind() const override { return "lstm"; }

  const LstmWeights<double>& weights() const { return weights_; }

 private:
  void feed(RecurrentState& state, int input_row) const;

  Alphabet alphabet_;
  LstmWeights<double> weights_;
};

}  // namespace homophony

#endif  // HOMOPHONY_LSTM_H_
