#pragma once

#include <stdexcept>
#include <string>

namespace adhm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ADHM_ERROR(Name)                                   \
    struct Name : Error {                                  \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

ADHM_ERROR(NonTerminating);
ADHM_ERROR(UnknownGenerator);
ADHM_ERROR(MissingCalculus);
ADHM_ERROR(ModelMismatch);
ADHM_ERROR(MissingCoaction);
ADHM_ERROR(NonConfluent);
ADHM_ERROR(ShapeError);
ADHM_ERROR(NoConvergence);
ADHM_ERROR(NotASolution);
ADHM_ERROR(DegenerateSolution);
ADHM_ERROR(SingularRho);
ADHM_ERROR(QuadratureBudgetExceeded);

#undef ADHM_ERROR

}  // namespace adhm
