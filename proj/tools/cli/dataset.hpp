#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "redist/problem.hpp"

namespace redist::cli {

enum class Format { Csv, Json };

/// Any failure to read or validate an input dataset.
class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Record {
    std::string id;
    double income = 0.0;
    double need = 0.0;
};

struct Dataset {
    std::vector<Record> records;
    std::string source;
    Format format = Format::Csv;

    Problem problem() const;
};

Format parse_format(std::string_view name);
std::string_view to_string(Format format) noexcept;
/// json for a ".json" extension, csv otherwise.
Format infer_format(const std::filesystem::path& path);

/// CSV: header "id,income,need", one agent per line.
/// JSON: {"agents":[{"id":..., "income":..., "need":...}, ...]}.
/// Ids must be unique and the records must form a valid problem.
Dataset parse_dataset(std::string_view text, Format format, std::string source = "<memory>");
Dataset load_dataset(const std::filesystem::path& path, Format format);

}  // namespace redist::cli
