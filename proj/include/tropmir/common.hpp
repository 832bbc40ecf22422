#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tropmir {

// Outcome of a semantic validation pass. Structural problems (bad indices,
// malformed permutations) are reported by throwing std::invalid_argument
// instead, so callers can tell the two apart.
struct ValidationReport {
    bool ok = true;
    std::vector<std::string> errors;
    std::vector<std::string> notes;

    void fail(std::string msg) {
        ok = false;
        errors.push_back(std::move(msg));
    }
    void note(std::string msg) { notes.push_back(std::move(msg)); }
    void merge(const ValidationReport& other) {
        ok = ok && other.ok;
        errors.insert(errors.end(), other.errors.begin(), other.errors.end());
        notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    }
};

}  // namespace tropmir
