#include "dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "redist/error.hpp"

namespace redist::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    for (std::size_t start = 0;;) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_number(std::string_view text, const std::string& where) {
    double value = 0.0;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size())
        throw DatasetError(where + ": '" + std::string(text) + "' is not a number");
    if (!std::isfinite(value)) throw DatasetError(where + ": NonFinite value '" + std::string(text) + "'");
    return value;
}

std::vector<Record> parse_csv(std::string_view text, const std::string& source) {
    std::vector<Record> records;
    bool header_seen = false;
    std::size_t line_no = 0;
    for (std::size_t start = 0; start <= text.size();) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const auto line = trim(text.substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        const std::string where = source + ":" + std::to_string(line_no);
        if (!header_seen) {
            if (fields.size() != 3 || fields[0] != "id" || fields[1] != "income" || fields[2] != "need")
                throw DatasetError(where + ": expected header 'id,income,need'");
            header_seen = true;
            continue;
        }
        if (fields.size() != 3)
            throw DatasetError(where + ": expected 3 fields, found " + std::to_string(fields.size()));
        auto id = fields[0];
        if (id.size() >= 2 && id.front() == '"' && id.back() == '"') id = id.substr(1, id.size() - 2);
        if (id.empty()) throw DatasetError(where + ": empty agent id");
        records.push_back({std::string(id), parse_number(fields[1], where), parse_number(fields[2], where)});
    }
    if (!header_seen) throw DatasetError(source + ": missing header 'id,income,need'");
    return records;
}

std::vector<Record> parse_json(std::string_view text, const std::string& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DatasetError(source + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("agents") || !doc["agents"].is_array())
        throw DatasetError(source + ": expected an object with an \"agents\" array");
    std::vector<Record> records;
    std::size_t index = 0;
    for (const auto& agent : doc["agents"]) {
        const std::string where = source + ": agents[" + std::to_string(index++) + "]";
        if (!agent.is_object()) throw DatasetError(where + " is not an object");
        for (const char* key : {"id", "income", "need"})
            if (!agent.contains(key)) throw DatasetError(where + " is missing \"" + key + "\"");
        if (!agent["id"].is_string()) throw DatasetError(where + ": \"id\" must be a string");
        if (!agent["income"].is_number() || !agent["need"].is_number())
            throw DatasetError(where + ": \"income\" and \"need\" must be numbers");
        records.push_back({agent["id"].get<std::string>(), agent["income"].get<double>(),
                           agent["need"].get<double>()});
        if (records.back().id.empty()) throw DatasetError(where + ": empty agent id");
    }
    return records;
}

}  // namespace

Problem Dataset::problem() const {
    std::vector<std::string> ids;
    std::vector<double> incomes, needs;
    for (const auto& r : records) {
        ids.push_back(r.id);
        incomes.push_back(r.income);
        needs.push_back(r.need);
    }
    try {
        return Problem::make(std::move(ids), std::move(incomes), std::move(needs));
    } catch (const Error& e) {
        throw DatasetError(source + ": " + e.what());
    }
}

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

std::string_view to_string(Format format) noexcept { return format == Format::Json ? "json" : "csv"; }

Format infer_format(const std::filesystem::path& path) {
    return path.extension() == ".json" ? Format::Json : Format::Csv;
}

Dataset parse_dataset(std::string_view text, Format format, std::string source) {
    Dataset data;
    data.records = format == Format::Json ? parse_json(text, source) : parse_csv(text, source);
    data.source = std::move(source);
    data.format = format;
    std::unordered_set<std::string_view> seen;
    for (const auto& r : data.records)
        if (!seen.insert(r.id).second) throw DatasetError(data.source + ": duplicate agent id '" + r.id + "'");
    data.problem();  // validates the problem invariants
    return data;
}

Dataset load_dataset(const std::filesystem::path& path, Format format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DatasetError(path.string() + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dataset(buffer.str(), format, path.string());
}

}  // namespace redist::cli
