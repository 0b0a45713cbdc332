#include "bcheck/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "bcheck/parser.hpp"
#include "bcheck/setops.hpp"
#include "bcheck/token.hpp"

namespace bcheck {

namespace {

std::string_view trimmed(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string_view(s).substr(b, e - b);
}

}  // namespace

std::vector<DataDecl> parse_decl_file(const std::string& text) {
    Parser p(tokenize(text));
    std::vector<DataDecl> decls;
    while (!p.at_end()) {
        SourceLoc loc = p.peek().loc;
        p.expect_kw("DATA", "at start of declaration");
        const Token& name = p.peek();
        if (name.kind != TokenKind::QualIdent)
            p.fail("expected qualified name (File!Column), got '" + name.text + "'");
        DataDecl d;
        d.qualified = p.eat().text;
        d.loc = loc;
        p.expect_op(":", "after data name");
        p.expect_kw("seq", "in data type");
        p.expect_op("(", "after seq");
        if (p.accept_kw("INT")) d.elem = BasicType::Int;
        else if (p.accept_kw("BOOL")) d.elem = BasicType::Bool;
        else if (p.accept_kw("STRING")) d.elem = BasicType::String;
        else p.fail("expected INT, BOOL or STRING");
        p.expect_op(")", "after element type");
        p.expect_kw("SOURCE", "in declaration");
        if (p.peek().kind != TokenKind::StrLit) p.fail("expected source path string");
        d.source_rel = std::filesystem::path(p.eat().text);
        p.expect_kw("COLUMN", "in declaration");
        if (p.peek().kind != TokenKind::StrLit) p.fail("expected column header string");
        d.column = p.eat().text;

        std::string stem = d.qualified.substr(0, d.qualified.find('!'));
        if (d.source_rel.stem().string() != stem)
            throw SemanticError("declaration '" + d.qualified + "' names file stem '" + stem +
                                    "' but its source is '" + d.source_rel.string() + "'",
                                loc);
        decls.push_back(std::move(d));
    }
    return decls;
}

BTypePtr decl_type(const DataDecl& d) {
    switch (d.elem) {
        case BasicType::Int: return t_seq(t_int());
        case BasicType::Bool: return t_seq(t_bool());
        case BasicType::String: return t_seq(t_string());
    }
    return t_seq(t_int());
}

BindResult bind_column(const DataDecl& decl, const CsvTable& table) {
    BindResult out;
    auto col = std::find(table.header.begin(), table.header.end(), decl.column);
    if (col == table.header.end()) {
        out.issues.push_back(
            DataIssue{decl.qualified, 0, decl.column, DataIssueReason::MissingColumn});
        return out;
    }
    size_t ci = static_cast<size_t>(col - table.header.begin());

    std::vector<Value> elems;
    elems.reserve(table.rows.size());
    for (size_t r = 0; r < table.rows.size(); ++r) {
        const std::string& raw = table.rows[r][ci];
        int row = static_cast<int>(r) + 1;  // 1-based body row
        switch (decl.elem) {
            case BasicType::Int: {
                std::string_view t = trimmed(raw);
                if (t.size() > 1 && t[0] == '+' && t[1] >= '0' && t[1] <= '9')
                    t.remove_prefix(1);  // from_chars rejects the explicit plus sign
                int64_t v = 0;
                auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
                if (ec == std::errc::result_out_of_range) {
                    out.issues.push_back(DataIssue{decl.qualified, row, raw, DataIssueReason::Overflow});
                    continue;
                }
                if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
                    out.issues.push_back(
                        DataIssue{decl.qualified, row, raw, DataIssueReason::NotAnInteger});
                    continue;
                }
                elems.push_back(Value::pair(Value::integer(row), Value::integer(v)));
                break;
            }
            case BasicType::Bool: {
                std::string_view t = trimmed(raw);
                if (t == "TRUE") {
                    elems.push_back(Value::pair(Value::integer(row), Value::boolean(true)));
                } else if (t == "FALSE") {
                    elems.push_back(Value::pair(Value::integer(row), Value::boolean(false)));
                } else {
                    out.issues.push_back(
                        DataIssue{decl.qualified, row, raw, DataIssueReason::NotABoolean});
                }
                break;
            }
            case BasicType::String:
                elems.push_back(Value::pair(Value::integer(row), Value::str(raw)));
                break;
        }
    }
    // rows are bound in order, so the pair list is already canonical
    out.sequence = Value::set_canonical(std::move(elems));
    return out;
}

EnvBuild build_env(const std::vector<DataDecl>& decls, const std::filesystem::path& data_dir,
                   CsvDialect dialect) {
    EnvBuild out;

    std::map<std::string, const DataDecl*> seen;
    for (const auto& d : decls) {
        auto [it, inserted] = seen.emplace(d.qualified, &d);
        if (!inserted)
            throw SemanticError("duplicate declaration of '" + d.qualified + "'", d.loc);
    }

    // each distinct source file is read once
    std::map<std::string, CsvReadResult> tables;
    for (const auto& d : decls) {
        std::filesystem::path full = data_dir / d.source_rel;
        std::string key = full.lexically_normal().string();
        if (tables.count(key)) continue;
        try {
            tables.emplace(key, read_csv(full, dialect));
        } catch (const IoError& e) {
            throw IoError(std::string(e.what()) + " (declared by " + d.qualified + ")");
        }
    }
    for (const auto& [key, result] : tables)
        out.issues.insert(out.issues.end(), result.issues.begin(), result.issues.end());

    GlobalEnv values;
    for (const auto& d : decls) {
        std::filesystem::path full = data_dir / d.source_rel;
        const CsvReadResult& rr = tables.at(full.lexically_normal().string());
        BindResult bound = bind_column(d, rr.table);
        out.issues.insert(out.issues.end(), bound.issues.begin(), bound.issues.end());
        values.emplace(d.qualified, std::move(bound.sequence));
        out.types.emplace(d.qualified, decl_type(d));
    }

    if (out.issues.empty()) out.values = std::move(values);
    return out;
}

}  // namespace bcheck
