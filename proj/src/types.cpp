#include "ris_sop/types.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace ris_sop {

namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 7> kSchemes{{
    {Scheme::SingleUser, "SingleUser"},
    {Scheme::SS, "SS"},
    {Scheme::OS, "OS"},
    {Scheme::BestPair, "BestPair"},
    {Scheme::NOMA, "NOMA"},
    {Scheme::RelayDL, "RelayDL"},
    {Scheme::RelayNDL, "RelayNDL"},
}};

constexpr std::array<std::pair<Method, std::string_view>, 4> kMethods{{
    {Method::ClosedForm, "ClosedForm"},
    {Method::Asymptotic, "Asymptotic"},
    {Method::Quadrature, "Quadrature"},
    {Method::MonteCarlo, "MonteCarlo"},
}};

constexpr std::array<std::pair<ChannelMode, std::string_view>, 2> kModes{{
    {ChannelMode::ExactProduct, "ExactProduct"},
    {ChannelMode::CltSurrogate, "CltSurrogate"},
}};

template <typename E, std::size_t Size>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, Size>& table, E value)
{
    for (const auto& [e, n] : table) {
        if (e == value) return n;
    }
    return "?";
}

template <typename E, std::size_t Size>
E value_of(const std::array<std::pair<E, std::string_view>, Size>& table, std::string_view name,
           const char* what)
{
    for (const auto& [e, n] : table) {
        if (n == name) return e;
    }
    throw std::invalid_argument(std::string("unknown ") + what + ": '" + std::string(name) + "'");
}

} // namespace

std::string_view to_string(Scheme s) { return name_of(kSchemes, s); }
std::string_view to_string(Method m) { return name_of(kMethods, m); }
std::string_view to_string(ChannelMode c) { return name_of(kModes, c); }

Scheme parse_scheme(std::string_view name) { return value_of(kSchemes, name, "scheme"); }
Method parse_method(std::string_view name) { return value_of(kMethods, name, "method"); }
ChannelMode parse_channel_mode(std::string_view name)
{
    return value_of(kModes, name, "channel mode");
}

} // namespace ris_sop
