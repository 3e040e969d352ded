#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace driftmon::ingest {

// One scored case from a prediction table.
struct PredictionRecord {
    std::string id;
    double score = 0.0;                         // evaluation score in [0,1]
    std::optional<int> label;                   // binary {0,1}
    std::optional<int> birads;                  // raw BIRADS assessment {0..6}
    std::map<std::string, std::string> attributes;
    std::vector<double> replicate_scores;       // optional MC-dropout replicates
};

struct AttributeSpec {
    std::vector<std::string> categories;        // ordered category list
    std::set<std::string> exclude;              // categories dropped from analyses
};

// Declarative attribute schema. When loaded from a config file, unknown
// categories in the data are hard errors; when inferred, categories are
// collected from the data in first-seen order.
struct AttributeSchema {
    std::map<std::string, AttributeSpec> attributes;
    std::set<std::string> ordinal;              // attributes with ordered categories
    bool declared = false;                      // true when loaded from a config file
};

struct Dataset {
    std::vector<PredictionRecord> records;
    AttributeSchema schema;
    // Rows excluded during label derivation, keyed by BIRADS code (0 and 3).
    std::map<int, long> excluded_birads;
    std::vector<std::string> attribute_names;   // ordered as first encountered
};

// BIRADS 0-6 finding descriptions.
const std::map<int, std::string>& birads_vocabulary();

// Map a BIRADS code to a binary target. Returns 0 for {1,2}, 1 for {4,5,6},
// nullopt (Excluded) for {0,3}. Codes outside {0..6} -> DataError.
std::optional<int> derive_label(int birads);

// Age in whole years -> one of {"<40","40-49","50-59","60-69","70-79","80+"}.
std::string bin_age(long age);

// Ordered age-group category list (the bin_age codomain).
const std::vector<std::string>& age_group_categories();

// Load an attribute schema config (JSON). Shape:
//   {"attributes": {"race": {"categories": [...], "exclude": [...]}, ...},
//    "ordinal": ["age_group", ...]}
AttributeSchema load_schema(const std::filesystem::path& path);

// Load a prediction table. CSV columns: `id`, `score` or `score_1..score_K`,
// `label` or `birads`; everything else is an attribute. Missing attribute
// values load as "Unknown". An integer `age` column derives `age_group` via
// bin_age when no explicit age_group column exists. Rows whose label would
// come from an excluded BIRADS code are dropped and counted.
Dataset load_dataset(const std::filesystem::path& path,
                     const AttributeSchema& schema = {});

// Serialize a Dataset back to CSV (round-trip form: the same columns
// load_dataset consumes).
void save_dataset(const std::filesystem::path& path, const Dataset& ds);

} // namespace driftmon::ingest
