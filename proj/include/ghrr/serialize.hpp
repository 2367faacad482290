#pragma once

// Hypervector persistence. Binary layout (little-endian):
//   magic "GHRR" | u32 version = 1 | u64 D | u64 m | u8 unitary_flag |
//   D*m*m entries as row-major (re, im) doubles per element.
// A lossless JSON form is provided for small instances.

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ghrr/hypervector.hpp"

namespace ghrr {

inline constexpr std::array<char, 4> kHvMagic = {'G', 'H', 'R', 'R'};
inline constexpr std::uint32_t kHvVersion = 1;

namespace detail {

template <typename T>
void write_pod(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("hypervector read: truncated stream");
    return v;
}

}  // namespace detail

inline void save_hypervector(const Hypervector& h, std::ostream& os) {
    os.write(kHvMagic.data(), kHvMagic.size());
    detail::write_pod(os, kHvVersion);
    detail::write_pod(os, static_cast<std::uint64_t>(h.dim_d()));
    detail::write_pod(os, static_cast<std::uint64_t>(h.dim_m()));
    detail::write_pod(os, static_cast<std::uint8_t>(h.unitary_flag() ? 1 : 0));
    for (std::size_t j = 0; j < h.dim_d(); ++j)
        for (std::size_t r = 0; r < h.dim_m(); ++r)
            for (std::size_t c = 0; c < h.dim_m(); ++c) {
                const Complex z = h.entry(j, r, c);
                detail::write_pod(os, z.real());
                detail::write_pod(os, z.imag());
            }
    if (!os) throw std::runtime_error("hypervector write failed");
}

inline Hypervector load_hypervector(std::istream& is) {
    std::array<char, 4> magic{};
    is.read(magic.data(), magic.size());
    if (!is || magic != kHvMagic)
        throw std::runtime_error("hypervector read: bad magic");
    const auto version = detail::read_pod<std::uint32_t>(is);
    if (version != kHvVersion)
        throw std::runtime_error("hypervector read: unsupported version " +
                                 std::to_string(version));
    const auto d = detail::read_pod<std::uint64_t>(is);
    const auto m = detail::read_pod<std::uint64_t>(is);
    const auto uflag = detail::read_pod<std::uint8_t>(is);
    Hypervector h(static_cast<std::size_t>(d), static_cast<std::size_t>(m), uflag != 0);
    for (std::size_t j = 0; j < h.dim_d(); ++j)
        for (std::size_t r = 0; r < h.dim_m(); ++r)
            for (std::size_t c = 0; c < h.dim_m(); ++c) {
                const double re = detail::read_pod<double>(is);
                const double im = detail::read_pod<double>(is);
                h.entry(j, r, c) = Complex(re, im);
            }
    return h;
}

inline void save_hypervector(const Hypervector& h, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    save_hypervector(h, os);
}

inline Hypervector load_hypervector(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for read: " + path);
    return load_hypervector(is);
}

/// Lossless JSON export; doubles round-trip exactly through nlohmann's
/// shortest-representation printing.
inline nlohmann::json hypervector_to_json(const Hypervector& h) {
    nlohmann::json elements = nlohmann::json::array();
    for (std::size_t j = 0; j < h.dim_d(); ++j) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t r = 0; r < h.dim_m(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < h.dim_m(); ++c) {
                const Complex z = h.entry(j, r, c);
                row.push_back({z.real(), z.imag()});
            }
            rows.push_back(std::move(row));
        }
        elements.push_back(std::move(rows));
    }
    return nlohmann::json{{"version", kHvVersion},
                          {"d", h.dim_d()},
                          {"m", h.dim_m()},
                          {"unitary", h.unitary_flag()},
                          {"elements", std::move(elements)}};
}

inline Hypervector hypervector_from_json(const nlohmann::json& js) {
    if (js.at("version").get<std::uint32_t>() != kHvVersion)
        throw std::runtime_error("hypervector json: unsupported version");
    Hypervector h(js.at("d").get<std::size_t>(), js.at("m").get<std::size_t>(),
                  js.at("unitary").get<bool>());
    const auto& elements = js.at("elements");
    if (elements.size() != h.dim_d())
        throw std::runtime_error("hypervector json: element count mismatch");
    for (std::size_t j = 0; j < h.dim_d(); ++j)
        for (std::size_t r = 0; r < h.dim_m(); ++r)
            for (std::size_t c = 0; c < h.dim_m(); ++c) {
                const auto& z = elements.at(j).at(r).at(c);
                h.entry(j, r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
            }
    return h;
}

}  // namespace ghrr
