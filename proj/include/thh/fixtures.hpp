#pragma once
#include <string>

#include "thh/acceptance.hpp"

namespace thh {

/* fixtures/v1 under the source tree */
std::string default_fixture_dir();
/* every *.json in dir, each {"version", "note", "cases": [...]}; id 0 in the result */
CriterionResult check_fixtures(const std::string& dir);

}  // namespace thh
