#!/usr/bin/env python3
"""
PDF rendering of verification reports
"""

from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER
from reportlab.lib.pagesizes import letter
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import inch
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

from execution.verification import ReportDocument

PASS_COLOR = colors.HexColor('#27ae60')
FAIL_COLOR = colors.HexColor('#e74c3c')


def _table_style(header_color):
    return TableStyle([
        ('BACKGROUND', (0, 0), (-1, 0), header_color),
        ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
        ('ALIGN', (0, 0), (-1, -1), 'LEFT'),
        ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
        ('FONTSIZE', (0, 0), (-1, 0), 10),
        ('FONTSIZE', (0, 1), (-1, -1), 9),
        ('BOTTOMPADDING', (0, 0), (-1, -1), 6),
        ('TOPPADDING', (0, 0), (-1, -1), 6),
        ('BACKGROUND', (0, 1), (-1, -1), colors.white),
        ('GRID', (0, 0), (-1, -1), 0.5, colors.HexColor('#bdc3c7')),
        ('VALIGN', (0, 0), (-1, -1), 'TOP'),
    ])


def generate_report_pdf(report: ReportDocument, filename: str) -> str:
    """Write the report's checks and fixture comparisons as PDF tables."""
    doc = SimpleDocTemplate(filename, pagesize=letter,
                            rightMargin=0.75*inch, leftMargin=0.75*inch,
                            topMargin=0.75*inch, bottomMargin=0.75*inch)

    styles = getSampleStyleSheet()
    title_style = ParagraphStyle(
        'ReportTitle',
        parent=styles['Heading1'],
        fontSize=22,
        textColor=colors.HexColor('#1a1a1a'),
        spaceAfter=20,
        alignment=TA_CENTER,
        fontName='Helvetica-Bold'
    )
    heading_style = ParagraphStyle(
        'ReportHeading',
        parent=styles['Heading1'],
        fontSize=14,
        textColor=colors.HexColor('#2c3e50'),
        spaceAfter=10,
        spaceBefore=16,
        fontName='Helvetica-Bold',
        borderWidth=1,
        borderColor=colors.HexColor('#3498db'),
        borderPadding=6,
        backColor=colors.HexColor('#ecf0f1')
    )
    body_style = ParagraphStyle('ReportBody', parent=styles['BodyText'], fontSize=10, leading=14)

    story = []
    story.append(Paragraph(f"Example {report.example}", title_style))
    story.append(Paragraph(f"{report.command.upper()} REPORT", title_style))

    status_color = PASS_COLOR if report.status == 'pass' else FAIL_COLOR
    summary_data = [
        ['Status:', report.status.upper(), 'Seed:', str(report.seed)],
        ['Generator:', report.generator, 'Checks:', str(len(report.checks))],
    ]
    summary_table = Table(summary_data, colWidths=[1.2*inch, 2.6*inch, 1*inch, 2.2*inch])
    summary_table.setStyle(TableStyle([
        ('BACKGROUND', (0, 0), (-1, -1), colors.HexColor('#f8f9fa')),
        ('TEXTCOLOR', (1, 0), (1, 0), status_color),
        ('FONTNAME', (0, 0), (0, -1), 'Helvetica-Bold'),
        ('FONTNAME', (2, 0), (2, -1), 'Helvetica-Bold'),
        ('FONTSIZE', (0, 0), (-1, -1), 9),
        ('GRID', (0, 0), (-1, -1), 0.5, colors.HexColor('#dee2e6'))
    ]))
    story.append(summary_table)
    story.append(Spacer(1, 0.25*inch))

    if report.checks:
        story.append(Paragraph("CHECKS", heading_style))
        rows = [['Check', 'Samples', 'Passes', 'Status']]
        for check in report.checks:
            rows.append([check.check, str(check.samples), str(check.passes),
                         'pass' if check.passed else 'fail'])
        table = Table(rows, colWidths=[3*inch, 1.2*inch, 1.2*inch, 1.1*inch])
        style = _table_style(colors.HexColor('#2c3e50'))
        for i, check in enumerate(report.checks, start=1):
            style.add('TEXTCOLOR', (3, i), (3, i), PASS_COLOR if check.passed else FAIL_COLOR)
        table.setStyle(style)
        story.append(table)

    if report.fixtures:
        story.append(Paragraph("FIXTURES", heading_style))
        rows = [['Fixture', 'Status']]
        rows += [[f['name'], 'pass' if f['passed'] else 'fail'] for f in report.fixtures]
        table = Table(rows, colWidths=[4.5*inch, 2*inch])
        table.setStyle(_table_style(colors.HexColor('#16a085')))
        story.append(table)

    if report.witnesses:
        story.append(Paragraph("LOCALITY WITNESSES", heading_style))
        rows = [['Radius', 'Word', 'Image gap']]
        for w in report.witnesses:
            word = ''.join(str(s) for s in w['word'])
            rows.append([str(w['radius']), Paragraph(word, body_style), ' '.join(w['image_gap'])])
        table = Table(rows, colWidths=[0.8*inch, 3.7*inch, 2*inch])
        table.setStyle(_table_style(colors.HexColor('#8e44ad')))
        story.append(table)

    doc.build(story)
    return filename
