#pragma once
// Canonical, locale-free double formatting. Shortest round-trip form, so
// written files re-parse to identical bits and identical results produce
// byte-identical files.

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tnw {

inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{})
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error("parse_double: bad number '" + std::string(s) + "'");
    return v;
}

} // namespace tnw
