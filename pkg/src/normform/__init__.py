"""Binary norm forms of quadratic fields and their flat H^1 classification sets."""

from .classgrp import ClassGroupData, GenusLabel, class_group, compose, genus_of, principal_form, principal_genus
from .cohom import (
    CohomologyReport,
    H1Set,
    cohomology_report,
    collapse_opposites,
    duplication_check,
    genera_count,
    h1_N,
    h1_Nprime,
    h1_O,
    h1_O_cardinality_formula,
)
from .orders import fundamental_unit, narrow_class_number, picard_nonmaximal
from .qform import Form, FormClass, equivalent_proper, form_class, norm_form

__version__ = "0.1.0"
