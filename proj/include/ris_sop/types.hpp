#pragma once

#include <string>
#include <string_view>

namespace ris_sop {

enum class Scheme { SingleUser, SS, OS, BestPair, NOMA, RelayDL, RelayNDL };
enum class Method { ClosedForm, Asymptotic, Quadrature, MonteCarlo };
enum class ChannelMode { ExactProduct, CltSurrogate };

std::string_view to_string(Scheme s);
std::string_view to_string(Method m);
std::string_view to_string(ChannelMode c);

// Parsers throw std::invalid_argument on unknown names.
Scheme parse_scheme(std::string_view name);
Method parse_method(std::string_view name);
ChannelMode parse_channel_mode(std::string_view name);

} // namespace ris_sop
