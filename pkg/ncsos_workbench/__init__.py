"""ncsos_workbench: group normal forms, trace-positivity reductions and SOS certificates."""
