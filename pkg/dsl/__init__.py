"""The .mono problem-file language and command reports."""

from dsl.parser import SpecError, SpecFile, parse_spec, read_spec
from dsl.printer import print_module, print_rep, print_spec, specs_equal, with_rep
from dsl.reports import VERDICTS, Report, digest
