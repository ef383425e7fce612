#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace augbin {

enum class Activation { identity, sigmoid, tanh, relu };

inline double activate(Activation kind, double z) {
  switch (kind) {
    case Activation::identity: return z;
    case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Activation::tanh: return std::tanh(z);
    case Activation::relu: return z > 0.0 ? z : 0.0;
  }
  return z;
}

/// F'(z), written in terms of the activation value F(z) where that is the
/// usual form. relu'(0) is taken as 0.
inline double derivative(Activation kind, double z, double value) {
  switch (kind) {
    case Activation::identity: return 1.0;
    case Activation::sigmoid: return value * (1.0 - value);
    case Activation::tanh: return 1.0 - value * value;
    case Activation::relu: return z > 0.0 ? 1.0 : 0.0;
  }
  return 1.0;
}

inline std::string_view to_string(Activation kind) {
  switch (kind) {
    case Activation::identity: return "identity";
    case Activation::sigmoid: return "sigmoid";
    case Activation::tanh: return "tanh";
    case Activation::relu: return "relu";
  }
  return "identity";
}

inline Activation parse_activation(std::string_view name) {
  if (name == "identity") return Activation::identity;
  if (name == "sigmoid") return Activation::sigmoid;
  if (name == "tanh") return Activation::tanh;
  if (name == "relu") return Activation::relu;
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

}  // namespace augbin
