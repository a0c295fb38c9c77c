// SPDX-License-Identifier: Apache-2.0
//
// Constructors for the entangled resource states used by the built-in
// protocols. Each channel carries a party-annotated layout; subsystem 0 is
// the most significant index digit throughout.

#pragma once

#include <map>
#include <string>

#include "tensor.hpp"

namespace crsp {

/// Named entangled resource state with its construction parameters.
struct ChannelSpec {
  std::string name;
  std::map<std::string, double> parameters;
  PureState state;

  const SystemLayout& layout() const { return state.layout(); }
};

enum class BellVariant { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Two-qubit Bell state. Psi+- follow the (|01> +- |10>)/sqrt(2) convention.
ChannelSpec make_bell(BellVariant variant,
                      const Party& first = Party::sender(),
                      const Party& second = Party::receiver());

/// n-party GHZ state (|0...0> + |1...1>)/sqrt(2), one qubit per party:
/// sender, receiver, then controllers 0..n-3. n = 2 degenerates to Phi+.
ChannelSpec make_ghz(std::size_t n);

/// Three-qubit maximal-slice channel (|000> + c|111> + d|110>)/sqrt(2)
/// over sender/receiver/controller. Requires c > 0 and c^2 + d^2 = 1.
ChannelSpec make_ms3(double c, double d);

/// Four-qubit analog (|0000> - c|1111> + d|1110>)/sqrt(2) over two senders,
/// receiver and controller.
ChannelSpec make_ms4(double c, double d);

/// Controller-diagonal coefficients (a, b) of the rotated maximal-slice
/// channel: a^2 = (1+d)/2, b^2 = (1-d)/2, a >= b >= 0.
struct ControllerForm {
  double a = 0.0;
  double b = 0.0;
};
ControllerForm ms_controller_form(double c, double d);

enum class MsVariant { Ms3, Ms4 };

/// The local unitary on the controller qubit that rotates the maximal-slice
/// channel into its controller-diagonal form.
UnitaryOperator ms_rotation_unitary(double c, double d, MsVariant variant);

/// Controller-diagonal three-qubit channel a|Phi+>_AB|0>_C + b|Phi->_AB|1>_C
/// built directly from (a, b); layout sender, receiver, controller.
ChannelSpec make_ms3_rotated(double a, double b);

/// Controller-diagonal four-qubit channel a|GHZ+>|0>_C + b|GHZ->|1>_C over
/// two senders, receiver, controller.
ChannelSpec make_ms4_rotated(double a, double b);

/// Partially entangled GHZ state a|0...0> + b|1...1> over two senders,
/// m controllers and the receiver (m + 3 qubits, m >= 0).
ChannelSpec make_pghz(double a, double b, std::size_t m_controllers);

/// Five-qubit Brown state over senders A1 A2, controller C and receiver
/// B1 B2.
ChannelSpec make_brown();

/// Generalized GHZ-class qudit state sum_j a_j |j>^{(M+2)} over the sender,
/// m controllers and the receiver; every subsystem has dimension d =
/// coeffs.size().
ChannelSpec make_ggc(const std::vector<cplx>& coeffs, std::size_t m_controllers);

/// Generalized Bell state (1/sqrt d) sum_j w^{jk} |j>|j+l mod d>.
ChannelSpec make_generalized_bell(std::size_t d, std::size_t k, std::size_t l,
                                  const Party& first = Party::sender(),
                                  const Party& second = Party::receiver());

/// Kronecker product of channels with concatenated layouts.
ChannelSpec tensor_channels(const std::vector<ChannelSpec>& parts, const std::string& name);

}  // namespace crsp
