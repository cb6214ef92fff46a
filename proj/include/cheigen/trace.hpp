#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cheigen {

/// Ordered log of the steps an extraction took: which shifted matrices were
/// formed, which products were taken, which column was picked and why.
class ExtractionTrace {
public:
    void add(std::string line) { lines_.push_back(std::move(line)); }

    const std::vector<std::string>& lines() const { return lines_; }
    bool empty() const { return lines_.empty(); }

    /// True when some line contains the given fragment.
    bool mentions(const std::string& fragment) const {
        for (const auto& l : lines_)
            if (l.find(fragment) != std::string::npos) return true;
        return false;
    }

private:
    std::vector<std::string> lines_;
};

} // namespace cheigen
