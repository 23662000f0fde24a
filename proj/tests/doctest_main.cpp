#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "tensvd/threads.hpp"

int main(int argc, char** argv) {
    tensvd::configure_threads_from_env(); // single-threaded unless asked otherwise
    doctest::Context context(argc, argv);
    return context.run();
}
