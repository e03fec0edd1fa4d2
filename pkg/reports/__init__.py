from reports.report_generator import ReportGenerator, flatten
