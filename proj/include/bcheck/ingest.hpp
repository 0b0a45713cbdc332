// CSV loading and the binding of declared data items to sequence values.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bcheck/btype.hpp"
#include "bcheck/errors.hpp"
#include "bcheck/eval.hpp"
#include "bcheck/typecheck.hpp"
#include "bcheck/value.hpp"

namespace bcheck {

struct CsvDialect {
    char delimiter = ';';
    char quote = '"';
};

struct CsvTable {
    std::filesystem::path source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // body rows, header arity each
};

enum class DataIssueReason {
    NotAnInteger,
    NotABoolean,
    MissingColumn,
    ArityMismatch,
    Overflow,
};

const char* data_issue_reason_name(DataIssueReason r);

// A cell or structural defect found while loading data. For cell-level
// issues `row` is the 1-based body row and `name` the declaration; for
// arity-mismatch `row` counts file records (the header is record 1) and
// `name` is the file stem.
struct DataIssue {
    std::string name;
    int row = 0;
    std::string cell;
    DataIssueReason reason;
};

struct CsvReadResult {
    CsvTable table;
    std::vector<DataIssue> issues;  // structural (arity) issues
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reads and parses one CSV file: first record is the header, quoted cells
// may contain the delimiter, doubled quotes escape a quote, a UTF-8 BOM is
// stripped, the trailing empty line is ignored. Throws IoError on filesystem
// or framing failures (unterminated quote, missing header).
CsvReadResult read_csv(const std::filesystem::path& path, CsvDialect dialect);

enum class BasicType { Int, Bool, String };

struct DataDecl {
    std::string qualified;               // FileStem!Column
    BasicType elem = BasicType::Int;
    std::filesystem::path source_rel;    // relative CSV path
    std::string column;                  // source column header
    SourceLoc loc;
};

// Declaration files: one `DATA <Stem>!<Name> : seq(T) SOURCE "p.csv"
// COLUMN "h"` per declaration. The qualified name's stem must match the
// source file's stem.
std::vector<DataDecl> parse_decl_file(const std::string& text);

BTypePtr decl_type(const DataDecl& d);

struct BindResult {
    Value sequence;
    std::vector<DataIssue> issues;
};

// Parses the declared column of the table into the sequence {1|->v1,...}.
// INT and BOOL cells are trimmed before parsing; STRING cells are verbatim.
// Collects one DataIssue per offending cell instead of failing fast.
BindResult bind_column(const DataDecl& decl, const CsvTable& table);

struct EnvBuild {
    GlobalEnv values;  // populated only when issues is empty
    TypeEnv types;
    std::vector<DataIssue> issues;
};

// Loads every distinct source file once and binds all declarations.
// Throws IoError for unreadable files and SemanticError for duplicate
// declaration names.
EnvBuild build_env(const std::vector<DataDecl>& decls, const std::filesystem::path& data_dir,
                   CsvDialect dialect);

}  // namespace bcheck
