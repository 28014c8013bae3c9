import logging

MONOID_LOG = logging.getLogger("monoid")
HGRP_LOG = logging.getLogger("hgrp")
SYM_LOG = logging.getLogger("sym")
DECOMP_LOG = logging.getLogger("decomp")
ENUM_LOG = logging.getLogger("enum")
SMT_LOG = logging.getLogger("smt")
CLI_LOG = logging.getLogger("cli")
CORE_LOG = logging.getLogger("core")
