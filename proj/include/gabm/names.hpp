#pragma once

#include <string>
#include <vector>

namespace gabm {

struct NamePool {
    std::vector<std::string> female;
    std::vector<std::string> male;
};

/// Bundled pool with 600 first names per gender.
const NamePool& default_name_pool();

} // namespace gabm
