#ifndef PRIMOVER_BFILE_HPP
#define PRIMOVER_BFILE_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "primover/natural.hpp"

namespace primover {

struct BFileEntry {
    Natural index;
    Natural value;
};

class BFileError : public std::runtime_error {
public:
    BFileError(std::size_t line, const std::string& what)
        : std::runtime_error("b-file line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// "index value" per line; blank lines and lines starting with '#' are
/// skipped. Indices must be strictly increasing.
inline std::vector<BFileEntry> parse_bfile(std::istream& in) {
    std::vector<BFileEntry> out;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;

        std::istringstream fields(line);
        std::string index_text, value_text, extra;
        fields >> index_text >> value_text;
        if (value_text.empty() || (fields >> extra))
            throw BFileError(lineno, "expected \"index value\", got \"" + line + "\"");
        const auto index = parse_natural(index_text);
        const auto value = parse_natural(value_text);
        if (!index || !value) throw BFileError(lineno, "non-numeric field in \"" + line + "\"");
        if (!out.empty() && *index <= out.back().index)
            throw BFileError(lineno, "index " + index->get_str() + " does not increase");
        out.push_back({*index, *value});
    }
    return out;
}

struct BFileComparison {
    enum class Outcome { NoEntries, Agree, Mismatch };

    Outcome outcome = Outcome::NoEntries;
    std::size_t compared = 0;
    std::optional<Natural> last_index;       // Agree: last index checked
    std::optional<Natural> mismatch_index;   // Mismatch
    std::optional<Natural> file_value;
    std::optional<Natural> computed_value;   // empty when the local list ran out

    std::string describe() const {
        switch (outcome) {
        case Outcome::NoEntries: return "no entries";
        case Outcome::Agree: return "agree through index " + last_index->get_str();
        case Outcome::Mismatch:
            return "mismatch at index " + mismatch_index->get_str() + ": file has " +
                   (file_value ? file_value->get_str() : std::string("nothing")) + ", computed " +
                   (computed_value ? computed_value->get_str() : std::string("nothing"));
        }
        return "?";
    }
};

/// Positional comparison of the file's terms up to `limit` against a locally
/// computed ascending sequence of all terms up to `limit`.
inline BFileComparison compare_bfile(const std::vector<BFileEntry>& entries,
                                     const std::vector<Natural>& computed, const Natural& limit) {
    BFileComparison cmp;
    std::size_t pos = 0;
    const BFileEntry* beyond = nullptr;  // first file entry above the limit
    for (const auto& e : entries) {
        if (e.value > limit) {
            beyond = &e;
            break;
        }
        if (pos >= computed.size() || computed[pos] != e.value) {
            cmp.outcome = BFileComparison::Outcome::Mismatch;
            cmp.mismatch_index = e.index;
            cmp.file_value = e.value;
            if (pos < computed.size()) cmp.computed_value = computed[pos];
            cmp.compared = pos;
            return cmp;
        }
        cmp.last_index = e.index;
        ++pos;
    }
    cmp.compared = pos;
    // A term we found below the limit that the file skips over. A file that
    // simply ends early is not a mismatch.
    if (beyond && pos < computed.size()) {
        cmp.outcome = BFileComparison::Outcome::Mismatch;
        cmp.mismatch_index = beyond->index;
        cmp.file_value = beyond->value;
        cmp.computed_value = computed[pos];
        return cmp;
    }
    if (pos > 0) cmp.outcome = BFileComparison::Outcome::Agree;
    return cmp;
}

} // namespace primover

#endif
