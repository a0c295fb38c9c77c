// SPDX-License-Identifier: Apache-2.0

#include "channels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace crsp {

namespace {
constexpr double kRoot2Inv = 0.7071067811865475244;

void require_unit_pair(double x, double y, const char* what) {
  if (std::abs(x * x + y * y - 1.0) > kNormTol)
    throw std::invalid_argument(std::string(what) + ": coefficients must satisfy x^2 + y^2 = 1");
}
}  // namespace

ChannelSpec make_bell(BellVariant variant, const Party& first, const Party& second) {
  SystemLayout layout({Subsystem{2, first}, Subsystem{2, second}});
  std::vector<cplx> amp(4);
  const char* name = "";
  switch (variant) {
    case BellVariant::PhiPlus:  amp[0] = kRoot2Inv; amp[3] = kRoot2Inv;  name = "bell(phi+)"; break;
    case BellVariant::PhiMinus: amp[0] = kRoot2Inv; amp[3] = -kRoot2Inv; name = "bell(phi-)"; break;
    case BellVariant::PsiPlus:  amp[1] = kRoot2Inv; amp[2] = kRoot2Inv;  name = "bell(psi+)"; break;
    case BellVariant::PsiMinus: amp[1] = kRoot2Inv; amp[2] = -kRoot2Inv; name = "bell(psi-)"; break;
  }
  return ChannelSpec{name, {}, PureState(std::move(amp), std::move(layout))};
}

ChannelSpec make_ghz(std::size_t n) {
  if (n < 2) throw std::invalid_argument("make_ghz: need at least two parties");
  std::vector<Subsystem> subs;
  subs.push_back(Subsystem{2, Party::sender()});
  subs.push_back(Subsystem{2, Party::receiver()});
  for (std::size_t i = 2; i < n; ++i) subs.push_back(Subsystem{2, Party::controller(static_cast<int>(i - 2))});
  SystemLayout layout(std::move(subs));
  std::vector<cplx> amp(layout.total_dim());
  amp.front() = kRoot2Inv;
  amp.back() = kRoot2Inv;
  std::ostringstream name;
  name << "ghz(" << n << ")";
  return ChannelSpec{name.str(), {{"n", static_cast<double>(n)}},
                     PureState(std::move(amp), std::move(layout))};
}

ChannelSpec make_ms3(double c, double d) {
  require_unit_pair(c, d, "make_ms3");
  if (c <= 0.0) throw std::invalid_argument("make_ms3: c must be positive");
  SystemLayout layout({Subsystem{2, Party::sender()}, Subsystem{2, Party::receiver()},
                       Subsystem{2, Party::controller()}});
  std::vector<cplx> amp(8);
  amp[0b000] = kRoot2Inv;
  amp[0b111] = c * kRoot2Inv;
  amp[0b110] = d * kRoot2Inv;
  return ChannelSpec{"ms3", {{"c", c}, {"d", d}}, PureState(std::move(amp), std::move(layout))};
}

ChannelSpec make_ms4(double c, double d) {
  require_unit_pair(c, d, "make_ms4");
  if (c <= 0.0) throw std::invalid_argument("make_ms4: c must be positive");
  SystemLayout layout({Subsystem{2, Party::sender(0)}, Subsystem{2, Party::sender(1)},
                       Subsystem{2, Party::receiver()}, Subsystem{2, Party::controller()}});
  std::vector<cplx> amp(16);
  amp[0b0000] = kRoot2Inv;
  amp[0b1111] = -c * kRoot2Inv;
  amp[0b1110] = d * kRoot2Inv;
  return ChannelSpec{"ms4", {{"c", c}, {"d", d}}, PureState(std::move(amp), std::move(layout))};
}

ControllerForm ms_controller_form(double c, double d) {
  require_unit_pair(c, d, "ms_controller_form");
  if (c <= 0.0) throw std::invalid_argument("ms_controller_form: c must be positive");
  if (d < 0.0) throw std::invalid_argument("ms_controller_form: d must be non-negative");
  return ControllerForm{std::sqrt((1.0 + d) / 2.0), std::sqrt((1.0 - d) / 2.0)};
}

UnitaryOperator ms_rotation_unitary(double c, double d, MsVariant variant) {
  const ControllerForm f = ms_controller_form(c, d);
  CMat u(2, 2);
  if (variant == MsVariant::Ms3) {
    // Controller eigenvectors (a, b) and (b, -a).
    u(0, 0) = f.a; u(0, 1) = f.b;
    u(1, 0) = f.b; u(1, 1) = -f.a;
  } else {
    // Controller eigenvectors (a, -b) and (b, a).
    u(0, 0) = f.a; u(0, 1) = -f.b;
    u(1, 0) = f.b; u(1, 1) = f.a;
  }
  return UnitaryOperator(std::move(u));
}

ChannelSpec make_ms3_rotated(double a, double b) {
  require_unit_pair(a, b, "make_ms3_rotated");
  if (a < 0.0 || b < 0.0 || a < b)
    throw std::invalid_argument("make_ms3_rotated: need a >= b >= 0");
  SystemLayout layout({Subsystem{2, Party::sender()}, Subsystem{2, Party::receiver()},
                       Subsystem{2, Party::controller()}});
  // a |Phi+>_AB |0>_C + b |Phi->_AB |1>_C in A,B,C digit order.
  std::vector<cplx> amp(8);
  amp[0b000] = a * kRoot2Inv;
  amp[0b110] = a * kRoot2Inv;
  amp[0b001] = b * kRoot2Inv;
  amp[0b111] = -b * kRoot2Inv;
  return ChannelSpec{"ms3_rotated", {{"a", a}, {"b", b}},
                     PureState(std::move(amp), std::move(layout))};
}

ChannelSpec make_ms4_rotated(double a, double b) {
  require_unit_pair(a, b, "make_ms4_rotated");
  if (a < 0.0 || b < 0.0 || a < b)
    throw std::invalid_argument("make_ms4_rotated: need a >= b >= 0");
  SystemLayout layout({Subsystem{2, Party::sender(0)}, Subsystem{2, Party::sender(1)},
                       Subsystem{2, Party::receiver()}, Subsystem{2, Party::controller()}});
  std::vector<cplx> amp(16);
  amp[0b0000] = a * kRoot2Inv;
  amp[0b1110] = a * kRoot2Inv;
  amp[0b0001] = b * kRoot2Inv;
  amp[0b1111] = -b * kRoot2Inv;
  return ChannelSpec{"ms4_rotated", {{"a", a}, {"b", b}},
                     PureState(std::move(amp), std::move(layout))};
}

ChannelSpec make_pghz(double a, double b, std::size_t m_controllers) {
  require_unit_pair(a, b, "make_pghz");
  if (a < 0.0 || b < 0.0) throw std::invalid_argument("make_pghz: coefficients must be non-negative");
  std::vector<Subsystem> subs;
  subs.push_back(Subsystem{2, Party::sender(0)});
  subs.push_back(Subsystem{2, Party::sender(1)});
  for (std::size_t i = 0; i < m_controllers; ++i)
    subs.push_back(Subsystem{2, Party::controller(static_cast<int>(i))});
  subs.push_back(Subsystem{2, Party::receiver()});
  SystemLayout layout(std::move(subs));
  std::vector<cplx> amp(layout.total_dim());
  amp.front() = a;
  amp.back() = b;
  return ChannelSpec{"pghz", {{"a", a}, {"b", b}, {"M", static_cast<double>(m_controllers)}},
                     PureState(std::move(amp), std::move(layout))};
}

ChannelSpec make_brown() {
  // (1/2)(|001>|Phi-> + |010>|Psi-> + |100>|Phi+> + |111>|Psi+>)
  // over A1 A2 C B1 B2.
  SystemLayout layout({Subsystem{2, Party::sender(0)}, Subsystem{2, Party::sender(1)},
                       Subsystem{2, Party::controller()}, Subsystem{2, Party::receiver()},
                       Subsystem{2, Party::receiver()}});
  std::vector<cplx> amp(32);
  auto put = [&amp](unsigned prefix, unsigned pair, double value) {
    amp[(prefix << 2) | pair] = value * 0.5 * kRoot2Inv;
  };
  put(0b001, 0b00, 1.0); put(0b001, 0b11, -1.0);  // |001> Phi-
  put(0b010, 0b01, 1.0); put(0b010, 0b10, -1.0);  // |010> Psi-
  put(0b100, 0b00, 1.0); put(0b100, 0b11, 1.0);   // |100> Phi+
  put(0b111, 0b01, 1.0); put(0b111, 0b10, 1.0);   // |111> Psi+
  return ChannelSpec{"brown", {}, PureState(std::move(amp), std::move(layout))};
}

ChannelSpec make_ggc(const std::vector<cplx>& coeffs, std::size_t m_controllers) {
  const std::size_t d = coeffs.size();
  if (d < 2) throw std::invalid_argument("make_ggc: need at least two coefficients");
  double norm2 = 0.0;
  for (const auto& z : coeffs) norm2 += std::norm(z);
  if (std::abs(norm2 - 1.0) > kNormTol)
    throw std::invalid_argument("make_ggc: coefficients not normalized");

  std::vector<Subsystem> subs;
  subs.push_back(Subsystem{d, Party::sender()});
  for (std::size_t i = 0; i < m_controllers; ++i)
    subs.push_back(Subsystem{d, Party::controller(static_cast<int>(i))});
  subs.push_back(Subsystem{d, Party::receiver()});
  SystemLayout layout(std::move(subs));

  std::vector<cplx> amp(layout.total_dim());
  const std::size_t n_subs = m_controllers + 2;
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t idx = 0;
    for (std::size_t s = 0; s < n_subs; ++s) idx = idx * d + j;
    amp[idx] = coeffs[j];
  }
  return ChannelSpec{"ggc",
                     {{"d", static_cast<double>(d)}, {"M", static_cast<double>(m_controllers)}},
                     PureState(std::move(amp), std::move(layout))};
}

ChannelSpec make_generalized_bell(std::size_t d, std::size_t k, std::size_t l,
                                  const Party& first, const Party& second) {
  if (d < 2) throw std::invalid_argument("make_generalized_bell: d must be >= 2");
  if (k >= d || l >= d) throw std::invalid_argument("make_generalized_bell: indices out of range");
  SystemLayout layout({Subsystem{d, first}, Subsystem{d, second}});
  std::vector<cplx> amp(d * d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j)
    amp[j * d + (j + l) % d] = scale * root_of_unity(j * k, d);
  std::ostringstream name;
  name << "gbell(" << k << "," << l << ")";
  return ChannelSpec{name.str(),
                     {{"d", static_cast<double>(d)}, {"k", static_cast<double>(k)},
                      {"l", static_cast<double>(l)}},
                     PureState(std::move(amp), std::move(layout))};
}

ChannelSpec tensor_channels(const std::vector<ChannelSpec>& parts, const std::string& name) {
  if (parts.empty()) throw std::invalid_argument("tensor_channels: no factors");
  PureState state = parts.front().state;
  for (std::size_t i = 1; i < parts.size(); ++i) state = kron(state, parts[i].state);
  std::map<std::string, double> params;
  for (const auto& part : parts)
    for (const auto& [key, value] : part.parameters) {
      auto it = params.find(key);
      if (it != params.end() && std::abs(it->second - value) > 1e-12)
        throw std::invalid_argument("tensor_channels: conflicting parameter '" + key + "'");
      params[key] = value;
    }
  return ChannelSpec{name, std::move(params), std::move(state)};
}

}  // namespace crsp
