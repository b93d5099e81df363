#include "gaugelab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gaugelab {

EmbeddingFormat detect_format(const std::string& path) {
    const auto dot = path.rfind('.');
    if (dot != std::string::npos) {
        const std::string ext = path.substr(dot + 1);
        if (ext == "jsonl" || ext == "ndjson") return EmbeddingFormat::Jsonl;
    }
    return EmbeddingFormat::Csv;
}

namespace {

EmbeddingMatrix parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::size_t dim = 0;
    std::vector<double> data;
    std::size_t rows = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("id,", 0) == 0) continue;  // header

        std::vector<double> values;
        std::size_t pos = 0;
        bool first = true;
        while (pos <= line.size()) {
            const auto comma = line.find(',', pos);
            const std::string field =
                line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (!first) {
                try {
                    std::size_t used = 0;
                    const double v = std::stod(field, &used);
                    if (used != field.size()) throw std::invalid_argument(field);
                    values.push_back(v);
                } catch (const std::exception&) {
                    throw ParseError("malformed CSV value '" + field + "'", lineno);
                }
            }
            first = false;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (values.empty()) throw ParseError("CSV row has no components", lineno);
        if (dim == 0) dim = values.size();
        if (values.size() != dim)
            throw ParseError("CSV row has " + std::to_string(values.size()) +
                                 " components, expected " + std::to_string(dim),
                             lineno);
        double norm_sq = 0.0;
        for (double v : values) norm_sq += v * v;
        if (norm_sq == 0.0) throw ParseError("zero embedding row", lineno);
        data.insert(data.end(), values.begin(), values.end());
        ++rows;
    }
    if (rows < 2) throw ParseError("need at least 2 embedding rows, got " + std::to_string(rows),
                                   lineno);
    return EmbeddingMatrix(rows, dim, std::move(data));
}

EmbeddingMatrix parse_jsonl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::size_t dim = 0;
    std::vector<double> data;
    std::size_t rows = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed JSON: ") + e.what(), lineno);
        }
        if (!j.contains("vector") || !j["vector"].is_array())
            throw ParseError("missing or non-array \"vector\" field", lineno);
        std::vector<double> values;
        for (const auto& v : j["vector"]) {
            if (!v.is_number()) throw ParseError("non-numeric vector component", lineno);
            values.push_back(v.get<double>());
        }
        if (values.empty()) throw ParseError("empty vector", lineno);
        if (dim == 0) dim = values.size();
        if (values.size() != dim)
            throw ParseError("vector has " + std::to_string(values.size()) +
                                 " components, expected " + std::to_string(dim),
                             lineno);
        double norm_sq = 0.0;
        for (double v : values) norm_sq += v * v;
        if (norm_sq == 0.0) throw ParseError("zero embedding row", lineno);
        data.insert(data.end(), values.begin(), values.end());
        ++rows;
    }
    if (rows < 2) throw ParseError("need at least 2 embedding rows, got " + std::to_string(rows),
                                   lineno);
    return EmbeddingMatrix(rows, dim, std::move(data));
}

}  // namespace

EmbeddingMatrix parse_embeddings(const std::string& text, EmbeddingFormat format) {
    return format == EmbeddingFormat::Csv ? parse_csv(text) : parse_jsonl(text);
}

EmbeddingMatrix read_embeddings(const std::string& path, EmbeddingFormat format) {
    return parse_embeddings(read_text_file(path), format);
}

std::string embeddings_to_csv(const EmbeddingMatrix& e) {
    std::string out = "id";
    for (std::size_t c = 0; c < e.cols(); ++c) out += ",c" + std::to_string(c);
    out += '\n';
    char buf[64];
    for (std::size_t i = 0; i < e.rows(); ++i) {
        out += std::to_string(i);
        for (double v : e.row(i)) {
            std::snprintf(buf, sizeof(buf), ",%.17g", v);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace gaugelab
