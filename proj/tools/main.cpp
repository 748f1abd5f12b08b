#include "logrs/run.hpp"

int main(int argc, char** argv) { return logrs::run_main(argc, argv); }
