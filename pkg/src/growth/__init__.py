from .analysis import analyze, composite_field, growth_set
from .candidates import candidate_fields
from .models import AnalysisReport, GrowthRecord, GrowthSet, VerificationFlags
from .predictors import predict_even_growth_fields
from .tables import ClassificationTables, get_tables, load_tables
from .verification import check_report, verify_report

__all__ = [
    "analyze",
    "composite_field",
    "growth_set",
    "candidate_fields",
    "AnalysisReport",
    "GrowthRecord",
    "GrowthSet",
    "VerificationFlags",
    "predict_even_growth_fields",
    "ClassificationTables",
    "get_tables",
    "load_tables",
    "check_report",
    "verify_report",
]
