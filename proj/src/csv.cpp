#include <fstream>
#include <sstream>

#include "bcheck/ingest.hpp"

namespace bcheck {

namespace {

std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure: " + path.string());
    return std::move(buf).str();
}

}  // namespace

CsvReadResult read_csv(const std::filesystem::path& path, CsvDialect dialect) {
    std::string text = read_file_bytes(path);
    if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.erase(0, 3);

    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string cell;
    bool in_quotes = false;
    bool cell_was_quoted = false;
    bool any_char = false;  // current record has content (distinguishes trailing newline)

    auto end_cell = [&]() {
        record.push_back(std::move(cell));
        cell.clear();
        cell_was_quoted = false;
    };
    auto end_record = [&]() {
        end_cell();
        records.push_back(std::move(record));
        record.clear();
        any_char = false;
    };

    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == dialect.quote) {
                if (i + 1 < text.size() && text[i + 1] == dialect.quote) {
                    cell.push_back(dialect.quote);
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cell.push_back(c);
            }
            continue;
        }
        if (c == dialect.quote && cell.empty() && !cell_was_quoted) {
            in_quotes = true;
            cell_was_quoted = true;
            any_char = true;
        } else if (c == dialect.delimiter) {
            end_cell();
            any_char = true;
        } else if (c == '\n') {
            if (!cell.empty() && cell.back() == '\r') cell.pop_back();
            if (any_char || !cell.empty() || !record.empty()) end_record();
        } else {
            cell.push_back(c);
            any_char = true;
        }
    }
    if (in_quotes)
        throw IoError("unterminated quoted cell in " + path.string());
    if (any_char || !cell.empty() || !record.empty()) end_record();

    if (records.empty()) throw IoError("missing header row in " + path.string());

    CsvReadResult out;
    out.table.source = path;
    out.table.header = std::move(records[0]);

    // header names must be unique within a table
    for (size_t i = 0; i < out.table.header.size(); ++i)
        for (size_t j = i + 1; j < out.table.header.size(); ++j)
            if (out.table.header[i] == out.table.header[j])
                throw IoError("duplicate column '" + out.table.header[i] + "' in " +
                              path.string());

    const size_t arity = out.table.header.size();
    std::string stem = path.stem().string();
    for (size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != arity) {
            DataIssue issue;
            issue.name = stem;
            issue.row = static_cast<int>(r) + 1;  // file record number, header is 1
            issue.reason = DataIssueReason::ArityMismatch;
            issue.cell = std::to_string(records[r].size()) + " cells, expected " +
                         std::to_string(arity);
            out.issues.push_back(std::move(issue));
        } else {
            out.table.rows.push_back(std::move(records[r]));
        }
    }
    return out;
}

const char* data_issue_reason_name(DataIssueReason r) {
    switch (r) {
        case DataIssueReason::NotAnInteger: return "not-an-integer";
        case DataIssueReason::NotABoolean: return "not-a-boolean";
        case DataIssueReason::MissingColumn: return "missing-column";
        case DataIssueReason::ArityMismatch: return "arity-mismatch";
        case DataIssueReason::Overflow: return "overflow";
    }
    return "unknown";
}

}  // namespace bcheck
