MAX_GROUND_RULES = 5000
MAX_GROUND_LITERALS = 2000
MAX_BRANCHES = 1000000

ORACLE_MAX_LITERALS = 16
ORACLE_MAX_ABDUCIBLES = 14
AUDIT_MAX_SUBSETS = 4096

SAT_BACKEND = "glucose4"

# "rule": one naming atom per abducible rule; "instance": naming atoms carry
# the rule's free variables so single ground instances can be deleted
RULE_NAMING = "rule"
