#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "biasgauge/stats.hpp"

namespace biasgauge {

class IngestError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class EvidenceKind { error_rate, tpr_percent, error_count };

struct EvaluationRecord {
    std::string group;
    std::string algorithm;
    std::string demographic;
    EvidenceKind kind;
    double value;
    std::optional<long long> trials;  // required iff kind == error_count
};

enum class RecordFormat { csv, json };

// error_rate -> value; tpr_percent -> 1 - value/100; error_count -> value/trials.
ErrorRate to_error_rate(EvidenceKind kind, double value,
                        std::optional<long long> trials = std::nullopt);

// Grouped, validated view: per group, every algorithm covers the same
// demographic set. Orders preserve first appearance in the input.
struct DemographicDataset {
    struct Block {
        std::string group;
        std::vector<std::string> demographics;
        // algorithm -> rates aligned with `demographics`
        std::vector<std::pair<std::string, std::vector<ErrorRate>>> algorithms;
    };
    std::vector<Block> blocks;
};

std::vector<EvaluationRecord> parse_records(std::string_view text, RecordFormat format);

DemographicDataset assemble(const std::vector<EvaluationRecord>& records);

// Canonical CSV form (kind=error_rate rows); parse_records/assemble of the
// output reproduces the dataset.
std::string serialize_csv(const DemographicDataset& ds);

// CSV header, fixed: group,algorithm,demographic,kind,value,trials
extern const char* const kRecordCsvHeader;

}  // namespace biasgauge
