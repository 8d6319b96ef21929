#ifndef CLMP_DATASET_HPP
#define CLMP_DATASET_HPP

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "clmp/error.hpp"

namespace clmp {

enum class ColumnType { continuous, categorical };

struct CategoricalColumn {
    std::vector<int> codes;           // per row, index into levels
    std::vector<std::string> levels;  // sorted, unique
};

/// Columnar tabular data keyed by column name. All columns have equal
/// length; rows with missing cells are dropped at ingestion and counted.
class Dataset {
public:
    Dataset(std::vector<std::string> names,
            std::vector<std::variant<std::vector<double>, CategoricalColumn>> columns,
            std::size_t dropped_rows);

    std::size_t row_count() const { return rows_; }
    std::size_t column_count() const { return names_.size(); }
    std::size_t dropped_row_count() const { return dropped_; }
    const std::vector<std::string>& column_names() const { return names_; }

    bool has_column(const std::string& name) const { return index_.count(name) > 0; }
    ColumnType type_of(const std::string& name) const;
    const std::vector<double>& continuous(const std::string& name) const;
    const CategoricalColumn& categorical(const std::string& name) const;

private:
    int index_checked(const std::string& name) const;

    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    std::vector<std::variant<std::vector<double>, CategoricalColumn>> cols_;
    std::size_t rows_ = 0;
    std::size_t dropped_ = 0;
};

struct SchemaHints {
    std::map<std::string, ColumnType> force;
};

/// Parses a CSV file with a header row. A cell is missing when empty; rows
/// with any missing cell are dropped (listwise deletion). A column whose
/// non-missing cells all parse as numbers and take more than 10 distinct
/// values is continuous, anything else categorical; hints override.
Dataset load_csv(const std::string& path, const SchemaHints& hints = {});
Dataset load_csv_text(const std::string& text, const SchemaHints& hints = {});

}  // namespace clmp

#endif
