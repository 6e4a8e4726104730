#pragma once

#include "magmech/params.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace magmech {

/// Flat view of a `key = value` file. Section headers `[a.b]` prefix the keys
/// that follow them, so `tol` under `[steady_state]` is stored as `steady_state.tol`.
class ConfigDocument {
public:
    static ConfigDocument parse(std::string_view text);
    static ConfigDocument load(const std::filesystem::path& path);

    bool contains(const std::string& key) const { return values_.count(key) != 0; }
    const std::map<std::string, std::string>& values() const { return values_; }

    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    long get_int(const std::string& key) const;

private:
    std::map<std::string, std::string> values_;
};

/// Builds RawParams from a parsed document. *_hz keys are multiplied by 2 pi.
RawParams params_from_document(const ConfigDocument& doc);

RawParams load_validate_config(const std::filesystem::path& path);

/// Serializes params in the same format load_validate_config reads (17 significant digits).
std::string write_config(const RawParams& params);

}  // namespace magmech
