#include "driftmon/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "driftmon/csv.hpp"
#include "driftmon/errors.hpp"
#include "driftmon/format.hpp"

namespace driftmon::ingest {

namespace {

const std::string kUnknown = "Unknown";

bool is_score_replicate(const std::string& name, int& index_out) {
    if (name.rfind("score_", 0) != 0) return false;
    auto idx = parse_int(name.substr(6));
    if (!idx || *idx < 1) return false;
    index_out = static_cast<int>(*idx);
    return true;
}

bool is_core_column(const std::string& name) {
    int idx = 0;
    return name == "id" || name == "score" || name == "label" ||
           name == "birads" || name == "age" || is_score_replicate(name, idx);
}

void note_category(AttributeSchema& schema, std::vector<std::string>& names,
                   const std::string& attr, const std::string& category,
                   bool declared, std::size_t line_no) {
    auto it = schema.attributes.find(attr);
    if (it == schema.attributes.end()) {
        if (declared) {
            throw DataError("undeclared attribute column: " + attr);
        }
        it = schema.attributes.emplace(attr, AttributeSpec{}).first;
    }
    if (std::find(names.begin(), names.end(), attr) == names.end()) {
        names.push_back(attr);
    }
    auto& cats = it->second.categories;
    if (std::find(cats.begin(), cats.end(), category) != cats.end()) return;
    if (category == kUnknown) {
        // "Unknown" is implicitly allowed everywhere (missing values).
        cats.push_back(category);
        return;
    }
    if (declared) {
        throw DataError("unknown attribute category \"" + category + "\" for " +
                        attr + " at line " + std::to_string(line_no));
    }
    cats.push_back(category);
}

} // namespace

const std::map<int, std::string>& birads_vocabulary() {
    static const std::map<int, std::string> vocab = {
        {0, "Needs additional imaging evaluation"},
        {1, "Negative"},
        {2, "Benign finding"},
        {3, "Probably benign finding"},
        {4, "Suspicious abnormality"},
        {5, "Highly suggestive of malignancy"},
        {6, "Known biopsy-proven malignancy"},
    };
    return vocab;
}

std::optional<int> derive_label(int birads) {
    switch (birads) {
        case 1:
        case 2:
            return 0;
        case 4:
        case 5:
        case 6:
            return 1;
        case 0:
        case 3:
            return std::nullopt; // Excluded
        default:
            throw DataError("BIRADS code out of range: " + std::to_string(birads));
    }
}

std::string bin_age(long age) {
    if (age < 0) throw DataError("negative age: " + std::to_string(age));
    if (age < 40) return "<40";
    if (age < 50) return "40-49";
    if (age < 60) return "50-59";
    if (age < 70) return "60-69";
    if (age < 80) return "70-79";
    return "80+";
}

const std::vector<std::string>& age_group_categories() {
    static const std::vector<std::string> cats = {"<40",   "40-49", "50-59",
                                                  "60-69", "70-79", "80+"};
    return cats;
}

AttributeSchema load_schema(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open schema file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("invalid schema JSON in " + path.string() + ": " + e.what());
    }
    AttributeSchema schema;
    schema.declared = true;
    if (!j.is_object()) throw DataError("schema root must be an object");
    if (j.contains("attributes")) {
        for (auto& [name, spec] : j.at("attributes").items()) {
            AttributeSpec as;
            if (spec.contains("categories")) {
                for (auto& c : spec.at("categories")) {
                    as.categories.push_back(c.get<std::string>());
                }
            }
            if (spec.contains("exclude")) {
                for (auto& c : spec.at("exclude")) {
                    as.exclude.insert(c.get<std::string>());
                }
            }
            schema.attributes.emplace(name, std::move(as));
        }
    }
    if (j.contains("ordinal")) {
        for (auto& c : j.at("ordinal")) schema.ordinal.insert(c.get<std::string>());
    }
    return schema;
}

Dataset load_dataset(const std::filesystem::path& path, const AttributeSchema& schema) {
    csv::Table table = csv::read_file(path);

    int id_col = -1, score_col = -1, label_col = -1, birads_col = -1, age_col = -1;
    int age_group_col = -1;
    std::map<int, int> replicate_cols; // replicate index -> column
    std::vector<int> attr_cols;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        const std::string& name = table.header[c];
        int rep = 0;
        if (name == "id") id_col = static_cast<int>(c);
        else if (name == "score") score_col = static_cast<int>(c);
        else if (name == "label") label_col = static_cast<int>(c);
        else if (name == "birads") birads_col = static_cast<int>(c);
        else if (name == "age") age_col = static_cast<int>(c);
        else if (is_score_replicate(name, rep)) {
            if (!replicate_cols.emplace(rep, static_cast<int>(c)).second) {
                throw DataError("duplicate column: " + name);
            }
        } else {
            if (name == "age_group") age_group_col = static_cast<int>(c);
            attr_cols.push_back(static_cast<int>(c));
        }
    }
    if (id_col < 0) throw DataError("missing required column: id");
    if (score_col < 0 && replicate_cols.empty()) {
        throw DataError("missing required column: score (or score_1..score_K)");
    }
    if (label_col < 0 && birads_col < 0) {
        throw DataError("missing required column: label (or birads)");
    }
    // Replicate columns must be a contiguous score_1..score_K block.
    for (std::size_t k = 1; k <= replicate_cols.size(); ++k) {
        if (!replicate_cols.count(static_cast<int>(k))) {
            throw DataError("replicate score columns must be contiguous score_1..score_K");
        }
    }
    const bool derive_age_group = age_col >= 0 && age_group_col < 0;

    Dataset ds;
    ds.schema = schema;
    const bool declared = schema.declared;
    std::set<std::string> seen_ids;

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line_no = table.line_numbers[r];
        const std::string where = " at row " + std::to_string(line_no);

        PredictionRecord rec;
        rec.id = row[static_cast<std::size_t>(id_col)];
        if (rec.id.empty()) throw DataError("empty id" + where);
        if (!seen_ids.insert(rec.id).second) {
            throw DataError("duplicate id \"" + rec.id + "\"" + where);
        }

        for (const auto& [rep, col] : replicate_cols) {
            const std::string& cell = row[static_cast<std::size_t>(col)];
            auto v = parse_double(cell);
            if (!v) throw DataError("non-numeric score_" + std::to_string(rep) + where);
            if (*v < 0.0 || *v > 1.0) {
                throw DataError("score out of range" + where);
            }
            rec.replicate_scores.push_back(*v);
        }

        if (score_col >= 0) {
            auto v = parse_double(row[static_cast<std::size_t>(score_col)]);
            if (!v) throw DataError("non-numeric score" + where);
            rec.score = *v;
        } else {
            double s = 0.0;
            for (double v : rec.replicate_scores) s += v;
            rec.score = s / static_cast<double>(rec.replicate_scores.size());
        }
        if (rec.score < 0.0 || rec.score > 1.0) {
            throw DataError("score out of range" + where);
        }

        if (birads_col >= 0) {
            const std::string& cell = row[static_cast<std::size_t>(birads_col)];
            if (!cell.empty()) {
                auto v = parse_int(cell);
                if (!v || *v < 0 || *v > 6) {
                    throw DataError("BIRADS code out of range" + where);
                }
                rec.birads = static_cast<int>(*v);
            }
        }
        if (label_col >= 0) {
            const std::string& cell = row[static_cast<std::size_t>(label_col)];
            if (!cell.empty()) {
                auto v = parse_int(cell);
                if (!v || (*v != 0 && *v != 1)) {
                    throw DataError("label must be 0 or 1" + where);
                }
                rec.label = static_cast<int>(*v);
            }
        }
        if (!rec.label) {
            if (!rec.birads) {
                throw DataError("row has neither label nor birads" + where);
            }
            auto derived = derive_label(*rec.birads);
            if (!derived) {
                ++ds.excluded_birads[*rec.birads];
                continue; // excluded from the record set, counted above
            }
            rec.label = derived;
        }

        for (int col : attr_cols) {
            const std::string& attr = table.header[static_cast<std::size_t>(col)];
            std::string value = row[static_cast<std::size_t>(col)];
            if (value.empty()) value = kUnknown;
            note_category(ds.schema, ds.attribute_names, attr, value, declared, line_no);
            rec.attributes[attr] = std::move(value);
        }
        if (derive_age_group) {
            const std::string& cell = row[static_cast<std::size_t>(age_col)];
            std::string group = kUnknown;
            if (!cell.empty()) {
                auto v = parse_int(cell);
                if (!v || *v < 0) throw DataError("invalid age" + where);
                group = bin_age(*v);
            }
            auto it = ds.schema.attributes.find("age_group");
            if (it == ds.schema.attributes.end()) {
                AttributeSpec as;
                as.categories = age_group_categories(); // canonical ordered bins
                ds.schema.attributes.emplace("age_group", std::move(as));
                ds.schema.ordinal.insert("age_group");
            }
            if (std::find(ds.attribute_names.begin(), ds.attribute_names.end(),
                          "age_group") == ds.attribute_names.end()) {
                ds.attribute_names.push_back("age_group");
            }
            if (group == kUnknown) {
                auto& cats = ds.schema.attributes.at("age_group").categories;
                if (std::find(cats.begin(), cats.end(), kUnknown) == cats.end()) {
                    cats.push_back(kUnknown);
                }
            }
            rec.attributes["age_group"] = std::move(group);
        }

        ds.records.push_back(std::move(rec));
    }
    return ds;
}

void save_dataset(const std::filesystem::path& path, const Dataset& ds) {
    std::size_t n_reps = 0;
    bool any_label = false, any_birads = false;
    for (const auto& rec : ds.records) {
        if (!ds.records.empty() && ds.records.front().replicate_scores.size() !=
                                       rec.replicate_scores.size()) {
            throw DataError("cannot serialize: records have differing replicate counts");
        }
        n_reps = rec.replicate_scores.size();
        any_label |= rec.label.has_value();
        any_birads |= rec.birads.has_value();
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path.string());

    std::vector<std::string> header = {"id", "score"};
    for (std::size_t k = 1; k <= n_reps; ++k) header.push_back("score_" + std::to_string(k));
    if (any_label) header.push_back("label");
    if (any_birads) header.push_back("birads");
    for (const auto& a : ds.attribute_names) header.push_back(a);
    out << csv::join(header) << "\n";

    for (const auto& rec : ds.records) {
        std::vector<std::string> row = {rec.id, fmt_double(rec.score)};
        for (double v : rec.replicate_scores) row.push_back(fmt_double(v));
        if (any_label) row.push_back(rec.label ? std::to_string(*rec.label) : "");
        if (any_birads) row.push_back(rec.birads ? std::to_string(*rec.birads) : "");
        for (const auto& a : ds.attribute_names) {
            auto it = rec.attributes.find(a);
            row.push_back(it == rec.attributes.end() ? kUnknown : it->second);
        }
        out << csv::join(row) << "\n";
    }
    if (!out) throw DataError("write failed: " + path.string());
}

} // namespace driftmon::ingest
