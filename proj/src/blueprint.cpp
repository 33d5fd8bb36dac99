#include "tempohom/blueprint.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tempohom/errors.hpp"

namespace tempohom {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kValidationGrid = 4096;

double reduce(double tau) { return tau - std::floor(tau); }

double parse_double(std::string_view s) {
  std::string str(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw BlueprintInvalid("cannot parse number '" + str + "'");
  }
  if (used != str.size()) throw BlueprintInvalid("trailing characters in number '" + str + "'");
  return v;
}

}  // namespace

PermittivityBlueprint PermittivityBlueprint::constant(double c) {
  PermittivityBlueprint bp;
  bp.kind_ = BlueprintKind::Constant;
  bp.constant_ = c;
  std::ostringstream os;
  os << "constant:" << c;
  bp.label_ = os.str();
  bp.validate();
  return bp;
}

PermittivityBlueprint PermittivityBlueprint::sine_inverse() {
  PermittivityBlueprint bp;
  bp.kind_ = BlueprintKind::SineInverse;
  bp.label_ = "sine_inverse";
  return bp;
}

PermittivityBlueprint PermittivityBlueprint::cosine_inverse() {
  PermittivityBlueprint bp;
  bp.kind_ = BlueprintKind::CosineInverse;
  bp.label_ = "cosine_inverse";
  return bp;
}

PermittivityBlueprint PermittivityBlueprint::fourier_of_inverse(double mean, std::vector<double> cos_coeffs,
                                                                std::vector<double> sin_coeffs) {
  PermittivityBlueprint bp;
  bp.kind_ = BlueprintKind::FourierOfInverse;
  bp.inv_mean_ = mean;
  const std::size_t n = std::max(cos_coeffs.size(), sin_coeffs.size());
  cos_coeffs.resize(n, 0.0);
  sin_coeffs.resize(n, 0.0);
  bp.inv_cos_ = std::move(cos_coeffs);
  bp.inv_sin_ = std::move(sin_coeffs);
  bp.label_ = "fourier_inverse";
  bp.validate();
  return bp;
}

PermittivityBlueprint PermittivityBlueprint::tabulated(std::vector<double> samples) {
  PermittivityBlueprint bp;
  bp.kind_ = BlueprintKind::TabulatedSamples;
  const std::size_t m = samples.size();
  try {
    bp.table_ = PeriodicProfile::from_samples(std::move(samples));
  } catch (const GridError& e) {
    throw BlueprintInvalid(std::string("tabulated blueprint: ") + e.what());
  }
  bp.label_ = "tabulated(" + std::to_string(m) + ")";
  bp.validate();
  return bp;
}

PermittivityBlueprint PermittivityBlueprint::parse(std::string_view spec) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  spec = trim(spec);
  if (spec == "sine_inverse") return sine_inverse();
  if (spec == "cosine_inverse") return cosine_inverse();
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw BlueprintInvalid("unknown blueprint '" + std::string(spec) + "'");
  const auto head = spec.substr(0, colon);
  const auto tail = trim(spec.substr(colon + 1));
  if (head == "constant") return constant(parse_double(tail));
  if (head == "file") return tabulated(read_samples_file(std::string(tail)));
  if (head == "fourier_inverse") {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= tail.size()) {
      const auto comma = tail.find(',', pos);
      const auto item = trim(tail.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
      values.push_back(parse_double(item));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    std::vector<double> a, b;
    for (std::size_t j = 1; j < values.size(); j += 2) {
      a.push_back(values[j]);
      b.push_back(j + 1 < values.size() ? values[j + 1] : 0.0);
    }
    return fourier_of_inverse(values.at(0), std::move(a), std::move(b));
  }
  throw BlueprintInvalid("unknown blueprint '" + std::string(spec) + "'");
}

bool PermittivityBlueprint::is_constant() const {
  switch (kind_) {
    case BlueprintKind::Constant:
      return true;
    case BlueprintKind::SineInverse:
    case BlueprintKind::CosineInverse:
      return false;
    case BlueprintKind::FourierOfInverse:
      for (std::size_t n = 0; n < inv_cos_.size(); ++n) {
        if (inv_cos_[n] != 0.0 || inv_sin_[n] != 0.0) return false;
      }
      return true;
    case BlueprintKind::TabulatedSamples:
      return table_.fourier().size() > 0 &&
             std::all_of(table_.fourier().begin(), table_.fourier().end(),
                         [](Complex c) { return c == Complex{}; });
  }
  return false;
}

std::string PermittivityBlueprint::describe() const { return label_; }

double PermittivityBlueprint::operator()(double tau) const {
  const double s = reduce(tau);
  switch (kind_) {
    case BlueprintKind::Constant:
      return constant_;
    case BlueprintKind::SineInverse:
      return 1.0 / (2.0 + std::sin(kTwoPi * s));
    case BlueprintKind::CosineInverse:
      return 1.0 / (2.0 + std::cos(kTwoPi * s));
    case BlueprintKind::FourierOfInverse:
      return 1.0 / inverse(s);
    case BlueprintKind::TabulatedSamples:
      return table_(s);
  }
  return constant_;
}

double PermittivityBlueprint::inverse(double tau) const {
  const double s = reduce(tau);
  switch (kind_) {
    case BlueprintKind::SineInverse:
      return 2.0 + std::sin(kTwoPi * s);
    case BlueprintKind::CosineInverse:
      return 2.0 + std::cos(kTwoPi * s);
    case BlueprintKind::FourierOfInverse: {
      double v = inv_mean_;
      for (std::size_t n = 0; n < inv_cos_.size(); ++n) {
        const double ph = kTwoPi * static_cast<double>(n + 1) * s;
        v += inv_cos_[n] * std::cos(ph) + inv_sin_[n] * std::sin(ph);
      }
      return v;
    }
    default:
      return 1.0 / (*this)(s);
  }
}

void PermittivityBlueprint::validate() const {
  if (kind_ == BlueprintKind::TabulatedSamples) {
    for (double v : table_.samples()) {
      if (!(v > 0.0)) throw BlueprintInvalid("blueprint sample is not strictly positive");
    }
    return;
  }
  if (kind_ == BlueprintKind::Constant) {
    if (!(constant_ > 0.0) || !std::isfinite(constant_)) throw BlueprintInvalid("constant blueprint must be positive");
    return;
  }
  for (std::size_t j = 0; j < kValidationGrid; ++j) {
    const double tau = static_cast<double>(j) / kValidationGrid;
    const double inv = inverse(tau);
    if (!(inv > 0.0) || !std::isfinite(inv)) throw BlueprintInvalid("blueprint is not strictly positive");
  }
}

double eval_eps(const PermittivityBlueprint& bp, double tau) {
  const double v = bp(tau);
  if (!(v > 0.0)) throw BlueprintInvalid("eps(tau) is not positive");
  return v;
}

PeriodicProfile profile_of_inverse(const PermittivityBlueprint& bp, std::size_t m) {
  if (m < 8 || !is_power_of_two(m)) throw GridError("tau grid must be a power of two >= 8");
  if (bp.kind() == BlueprintKind::Constant) return PeriodicProfile::constant(bp.inverse(0.0), m);
  std::vector<double> s(m);
  for (std::size_t j = 0; j < m; ++j) s[j] = bp.inverse(static_cast<double>(j) / static_cast<double>(m));
  return PeriodicProfile::from_samples(std::move(s));
}

PeriodicProfile profile_of_eps(const PermittivityBlueprint& bp, std::size_t m) {
  if (m < 8 || !is_power_of_two(m)) throw GridError("tau grid must be a power of two >= 8");
  if (bp.kind() == BlueprintKind::Constant) return PeriodicProfile::constant(bp(0.0), m);
  std::vector<double> s(m);
  for (std::size_t j = 0; j < m; ++j) s[j] = bp(static_cast<double>(j) / static_cast<double>(m));
  return PeriodicProfile::from_samples(std::move(s));
}

QuasiPeriodic antiderivative(const PeriodicProfile& p) { return QuasiPeriodic::from_profile(p).integral(); }

std::vector<double> read_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BlueprintInvalid("cannot open blueprint file '" + path + "'");
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    values.push_back(parse_double(std::string_view(line).substr(first, last - first + 1)));
  }
  return values;
}

}  // namespace tempohom
