from mengercurv.actions.report.action import ReportAction
