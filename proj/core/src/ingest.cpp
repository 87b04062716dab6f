#include "biasgauge/ingest.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "biasgauge/report.hpp"
#include "json.hpp"

namespace biasgauge {

const char* const kRecordCsvHeader = "group,algorithm,demographic,kind,value,trials";

namespace {

EvidenceKind parse_kind(const std::string& s, const std::string& where) {
    if (s == "error_rate") return EvidenceKind::error_rate;
    if (s == "tpr_percent") return EvidenceKind::tpr_percent;
    if (s == "error_count") return EvidenceKind::error_count;
    throw IngestError(where + ": unknown kind '" + s +
                      "' (expected error_rate, tpr_percent, or error_count)");
}

const char* kind_name(EvidenceKind k) {
    switch (k) {
        case EvidenceKind::error_rate: return "error_rate";
        case EvidenceKind::tpr_percent: return "tpr_percent";
        case EvidenceKind::error_count: return "error_count";
    }
    return "?";
}

double parse_number(const std::string& s, const std::string& where) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw IngestError(where + ": malformed number '" + s + "'");
    }
    return v;
}

void validate_record(const EvaluationRecord& rec, const std::string& where) {
    if (rec.algorithm.empty()) throw IngestError(where + ": empty algorithm label");
    if (rec.demographic.empty()) throw IngestError(where + ": empty demographic label");
    switch (rec.kind) {
        case EvidenceKind::error_rate:
            if (!(rec.value >= 0.0 && rec.value <= 1.0)) {
                throw IngestError(where + ": error_rate value must lie in [0,1], got " +
                                  format_double(rec.value));
            }
            break;
        case EvidenceKind::tpr_percent:
            if (!(rec.value >= 0.0 && rec.value <= 100.0)) {
                throw IngestError(where +
                                  ": tpr_percent value must lie in [0,100], got " +
                                  format_double(rec.value));
            }
            break;
        case EvidenceKind::error_count:
            if (!rec.trials) {
                throw IngestError(where + ": error_count requires trials");
            }
            if (*rec.trials <= 0) {
                throw IngestError(where + ": trials must be positive");
            }
            if (!(rec.value >= 0.0 && rec.value <= static_cast<double>(*rec.trials)) ||
                rec.value != std::floor(rec.value)) {
                throw IngestError(where +
                                  ": error_count value must be an integer in "
                                  "[0, trials]");
            }
            break;
    }
    if (rec.kind != EvidenceKind::error_count && rec.trials) {
        throw IngestError(where + ": trials only applies to kind=error_count");
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::vector<EvaluationRecord> parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<EvaluationRecord> records;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw IngestError("empty input: missing CSV header");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kRecordCsvHeader) {
        auto got = split_csv_line(line);
        auto want = split_csv_line(kRecordCsvHeader);
        for (std::size_t i = 0; i < got.size(); ++i) {
            if (i >= want.size() || got[i] != want[i]) {
                throw IngestError("line 1: unknown or misplaced column '" + got[i] +
                                  "' (header must be exactly '" +
                                  kRecordCsvHeader + "')");
            }
        }
        throw IngestError("line 1: header must be exactly '" +
                          std::string(kRecordCsvHeader) + "'");
    }

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        auto fields = split_csv_line(line);
        if (fields.size() != 6) {
            throw IngestError(where + ": expected 6 fields, got " +
                              std::to_string(fields.size()));
        }
        EvaluationRecord rec;
        rec.group = fields[0];
        rec.algorithm = fields[1];
        rec.demographic = fields[2];
        rec.kind = parse_kind(fields[3], where);
        rec.value = parse_number(fields[4], where);
        if (!fields[5].empty()) {
            double t = parse_number(fields[5], where);
            if (t != std::floor(t)) throw IngestError(where + ": trials must be integral");
            rec.trials = static_cast<long long>(t);
        }
        validate_record(rec, where);
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<EvaluationRecord> parse_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IngestError(std::string("JSON parse error: ") + e.what());
    }
    if (!doc.is_array()) throw IngestError("JSON input must be an array of records");

    static const std::set<std::string> known = {"group",  "algorithm", "demographic",
                                               "kind",   "value",     "trials"};
    std::vector<EvaluationRecord> records;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::string where = "record " + std::to_string(i + 1);
        const auto& obj = doc[i];
        if (!obj.is_object()) throw IngestError(where + ": not a JSON object");
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (!known.count(it.key())) {
                throw IngestError(where + ": unknown field '" + it.key() + "'");
            }
        }
        EvaluationRecord rec;
        rec.group = obj.value("group", "");
        try {
            rec.algorithm = obj.at("algorithm").get<std::string>();
            rec.demographic = obj.at("demographic").get<std::string>();
            rec.kind = parse_kind(obj.at("kind").get<std::string>(), where);
            rec.value = obj.at("value").get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw IngestError(where + ": " + e.what());
        }
        if (obj.contains("trials") && !obj["trials"].is_null()) {
            rec.trials = obj["trials"].get<long long>();
        }
        validate_record(rec, where);
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace

ErrorRate to_error_rate(EvidenceKind kind, double value,
                        std::optional<long long> trials) {
    EvaluationRecord rec{"", "a", "d", kind, value, trials};
    validate_record(rec, std::string("to_error_rate(") + kind_name(kind) + ")");
    switch (kind) {
        case EvidenceKind::error_rate: return ErrorRate(value);
        case EvidenceKind::tpr_percent: return ErrorRate(1.0 - value / 100.0);
        case EvidenceKind::error_count:
            return ErrorRate(value / static_cast<double>(*trials));
    }
    throw IngestError("unreachable kind");
}

std::vector<EvaluationRecord> parse_records(std::string_view text, RecordFormat format) {
    return format == RecordFormat::csv ? parse_csv(text) : parse_json(text);
}

DemographicDataset assemble(const std::vector<EvaluationRecord>& records) {
    if (records.empty()) throw IngestError("assemble: no records");

    std::set<std::tuple<std::string, std::string, std::string>> seen;
    DemographicDataset ds;
    for (const EvaluationRecord& rec : records) {
        if (!seen.insert({rec.group, rec.algorithm, rec.demographic}).second) {
            throw IngestError("duplicate key (group='" + rec.group + "', algorithm='" +
                              rec.algorithm + "', demographic='" + rec.demographic +
                              "')");
        }
        auto* block = [&]() -> DemographicDataset::Block* {
            for (auto& b : ds.blocks) {
                if (b.group == rec.group) return &b;
            }
            ds.blocks.push_back({rec.group, {}, {}});
            return &ds.blocks.back();
        }();
        std::size_t demo_idx = block->demographics.size();
        for (std::size_t i = 0; i < block->demographics.size(); ++i) {
            if (block->demographics[i] == rec.demographic) demo_idx = i;
        }
        if (demo_idx == block->demographics.size()) {
            block->demographics.push_back(rec.demographic);
        }
        (void)demo_idx;
        bool have_alg = false;
        for (auto& [name, rates] : block->algorithms) {
            if (name == rec.algorithm) have_alg = true;
        }
        if (!have_alg) {
            block->algorithms.emplace_back(rec.algorithm, std::vector<ErrorRate>{});
        }
    }

    // Uniformity: every algorithm in a block covers exactly the block's
    // demographic set, in order. Fill rate vectors keyed by demographic.
    for (auto& block : ds.blocks) {
        if (block.demographics.size() < 2) {
            throw IngestError("group '" + block.group + "' has fewer than 2 demographics");
        }
        for (auto& [alg, rates] : block.algorithms) {
            std::vector<ErrorRate> ordered;
            ordered.reserve(block.demographics.size());
            for (const std::string& demo : block.demographics) {
                bool found = false;
                for (const EvaluationRecord& rec : records) {
                    if (rec.group == block.group && rec.algorithm == alg &&
                        rec.demographic == demo) {
                        ordered.push_back(to_error_rate(rec.kind, rec.value, rec.trials));
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    throw IngestError("ragged block: group='" + block.group +
                                      "' algorithm='" + alg +
                                      "' is missing demographic '" + demo + "'");
                }
            }
            rates = std::move(ordered);
        }
    }
    return ds;
}

std::string serialize_csv(const DemographicDataset& ds) {
    std::string out = kRecordCsvHeader;
    out += '\n';
    for (const auto& block : ds.blocks) {
        for (const auto& [alg, rates] : block.algorithms) {
            for (std::size_t i = 0; i < block.demographics.size(); ++i) {
                out += block.group;
                out += ',';
                out += alg;
                out += ',';
                out += block.demographics[i];
                out += ",error_rate,";
                out += format_double(rates[i].value());
                out += ",\n";
            }
        }
    }
    return out;
}

}  // namespace biasgauge
