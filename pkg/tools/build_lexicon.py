"""Regenerate src/planprobe/data/lexicon.json from the curated lists below."""
import json
from pathlib import Path

KEYWORD_FORMS = {
    "VP_before": ["come before", "precede", "be executed before", "take place before",
                  "happen earlier than", "be done prior to", "be finished before", "be scheduled ahead of"],
    "VP_after": ["come after", "follow", "be executed later than", "take place after",
                 "happen later than", "be done subsequent to", "be started after", "be carried out following"],
    "VP_neutral": ["happen", "occur", "be executed", "take place", "be performed",
                   "be carried out", "be done", "be conducted"],
    "P_before": ["before", "ahead of", "earlier than", "prior to", "in advance of", "sooner than", "preceding"],
    "P_after": ["after", "behind", "later than", "following", "subsequent to", "succeeding", "in the wake of"],
    "SC_before": ["before", "by the time", "prior to the time", "ahead of the time", "earlier than the time",
                  "in advance of the moment", "sooner than the time"],
    "SC_after": ["after", "once", "as soon as", "only after", "following the moment", "later than the time",
                 "subsequent to the time"],
}

TOPICS = {
    "Teacher": """lesson planning; attendance taking; homework grading; quiz preparation; classroom setup;
        parent email reply; lecture delivery; group activity supervision; test proctoring; report card writing;
        student counseling; whiteboard cleaning; curriculum review; field trip planning; library visit;
        staff meeting attendance; science demonstration; reading session; seating chart update; progress report filing""",
    "Computer Programmer": """code review; bug fixing; unit test writing; feature implementation; database migration;
        dependency upgrade; pull request submission; documentation update; stand-up meeting; performance profiling;
        log analysis; build pipeline repair; API design; code refactoring; release tagging; security patching;
        issue triage; pair programming session; deployment verification; backlog grooming""",
    "Waiter/Waitress": """table setting; menu presentation; order taking; drink serving; food delivery;
        special explanation; table clearing; bill presentation; payment processing; napkin folding;
        condiment refilling; dessert recommendation; reservation check; high chair setup; complaint handling;
        tip sharing; floor sweeping; silverware polishing; wine pouring; shift handover""",
    "Physical Therapist": """patient assessment; exercise demonstration; range of motion testing; treatment plan writing;
        ultrasound therapy; ice pack application; gait training; balance training; progress note update;
        insurance form review; home exercise instruction; massage therapy; equipment sanitizing;
        posture evaluation; strength measurement; appointment scheduling; case discussion; brace fitting;
        heat therapy; discharge summary""",
    "Marketing Manager": """campaign planning; budget review; market research; social media scheduling; ad copy approval;
        competitor analysis; brand guideline update; newsletter drafting; agency briefing; sales team sync;
        customer survey design; landing page review; press release approval; event sponsorship review;
        analytics reporting; product launch planning; influencer outreach; keyword research; focus group moderation;
        quarterly presentation""",
    "Stock Broker": """market opening review; client portfolio check; trade execution; order confirmation; news scanning;
        risk assessment; client call; compliance check; account opening; research report reading;
        margin review; dividend tracking; stop order setting; commission calculation; investment pitch;
        end of day reconciliation; earnings call listening; regulatory filing; watchlist update; client meeting""",
    "Graphic Designer": """client brief review; mood board creation; logo sketching; color palette selection;
        typography selection; layout design; image retouching; icon drawing; mockup preparation; client presentation;
        revision implementation; print file export; brand style update; banner design; infographic creation;
        font licensing check; portfolio update; asset organization; proof approval; vector tracing""",
    "Electrician": """site inspection; wiring diagram review; circuit testing; breaker replacement; outlet installation;
        light fixture mounting; conduit bending; cable pulling; panel labeling; grounding check;
        permit application; voltage measurement; fault tracing; switch replacement; smoke detector wiring;
        material ordering; safety briefing; generator hookup; invoice preparation; final walkthrough""",
    "Human Resources Manager": """job posting; resume screening; interview scheduling; candidate interview; offer letter drafting;
        onboarding session; payroll review; benefits enrollment; policy update; employee survey;
        conflict mediation; performance review; training coordination; exit interview; compliance audit;
        headcount planning; handbook revision; team building planning; reference check; timesheet approval""",
    "Journalist": """story pitching; source interview; fact checking; article drafting; headline writing;
        photo selection; editor meeting; press conference attendance; quote transcription; archive research;
        social media posting; deadline tracking; copy editing; data visualization; public records request;
        podcast recording; caption writing; sidebar writing; correction filing; newsletter curation""",
    "Video Game Designer": """level layout sketching; playtest session; mechanic prototyping; balance tuning; quest writing;
        design document update; enemy behavior scripting; asset review; art direction sync; sound cue planning;
        tutorial design; difficulty curve analysis; bug report triage; economy modeling; UI wireframing;
        feedback survey review; milestone demo; localization review; achievement design; patch note writing""",
    "Network Engineer": """network status check; network diagnosis; network speed test; router configuration;
        firewall rule update; switch firmware upgrade; cable tracing; VPN setup; bandwidth monitoring;
        packet capture; DNS record update; IP address allocation; wireless survey; outage report writing;
        backup link test; access point installation; port security audit; load balancer tuning;
        latency analysis; topology diagram update""",
    "Hair Stylist": """client consultation; hair washing; hair cutting; applying hair color; hair drying; blowout styling;
        beard trimming; scalp treatment; highlight foiling; toner application; braid styling; perm setting;
        tool sterilizing; product restocking; appointment confirmation; station cleaning; updo styling;
        deep conditioning; bang trimming; payment collection""",
    "Nurse": """patient admission; vital signs check; medication administration; wound dressing; IV line insertion;
        blood sample collection; chart updating; shift report; patient education; catheter care;
        pain assessment; doctor rounds; discharge planning; fall risk assessment; supply restocking;
        family update; glucose monitoring; bed changing; specimen labeling; infection control check""",
    "Doctor": """patient examination; diagnosis review; prescription writing; lab result review; ward rounds;
        surgery consultation; medical history taking; referral letter writing; imaging review; treatment discussion;
        follow up call; clinic charting; vaccination; emergency triage; case conference; continuing education reading;
        insurance authorization; specialist consultation; discharge approval; research protocol review""",
    "Chef": """menu planning; ingredient ordering; produce inspection; knife sharpening; stock preparation; sauce making;
        vegetable chopping; meat butchering; bread baking; line check; plating demonstration; staff briefing;
        inventory count; dessert preparation; walk-in cooler cleaning; special tasting; allergen labeling;
        grill cleaning; recipe costing; service expediting""",
    "Accountant": """invoice processing; bank reconciliation; ledger review; expense report approval; tax return preparation;
        payroll calculation; budget forecasting; audit preparation; financial statement drafting; accounts payable run;
        accounts receivable follow-up; depreciation calculation; variance analysis; client meeting; receipt filing;
        journal entry posting; cash flow projection; sales tax filing; cost allocation; month end close""",
    "Lawyer": """case file review; client intake; legal research; contract drafting; brief writing; deposition;
        court hearing; settlement negotiation; discovery request; motion filing; witness preparation;
        document review; billing entry; opposing counsel call; trial preparation; evidence cataloging;
        compliance advice; will drafting; mediation session; closing argument rehearsal""",
    "Architect": """site visit; zoning review; concept sketching; floor plan drafting; 3D model building; client presentation;
        material selection; structural engineer sync; cost estimate review; permit drawing preparation;
        lighting study; code compliance check; rendering production; specification writing; contractor bid review;
        construction administration; change order review; sustainability analysis; model printing; punch list walk""",
    "Civil Engineer": """survey data review; load calculation; drainage design; road alignment; soil report review;
        bridge inspection; concrete testing; quantity takeoff; project schedule update; contractor meeting;
        environmental assessment; traffic study; permit coordination; CAD drafting; safety inspection;
        budget tracking; specification review; stakeholder presentation; site photography; as-built documentation""",
    "Pharmacist": """prescription verification; drug interaction check; medication dispensing; patient counseling;
        inventory ordering; insurance claim processing; compounding; vaccine administration; label printing;
        controlled substance count; refill authorization; doctor consultation; expiry date check;
        pill counting; shelf organization; blood pressure screening; formulary review; technician supervision;
        adverse event reporting; pharmacy cleaning""",
    "Dentist": """patient check-in; dental exam; teeth cleaning; x-ray review; cavity filling; root canal treatment;
        crown fitting; gum assessment; whitening procedure; treatment plan explanation; impression taking;
        fluoride application; sealant placement; tooth extraction; orthodontic check; instrument sterilization;
        chart documentation; lab order; anesthesia administration; recall scheduling""",
    "Police Officer": """roll call; patrol; traffic stop; incident report writing; witness interview; evidence collection;
        community meeting; radio check; vehicle inspection; court testimony; suspect booking; scene securing;
        neighborhood canvass; training drill; warrant service; school visit; accident investigation;
        citation writing; shift briefing; equipment check""",
    "Firefighter": """engine check; hose inspection; breathing apparatus test; fire drill; station cleaning;
        ladder training; hydrant inspection; emergency response; rescue operation; medical call;
        fire prevention talk; gear maintenance; incident report; physical training; building inspection;
        radio test; truck washing; meal preparation; pump testing; debrief meeting""",
    "Farmer": """livestock feeding; crop watering; field plowing; seed planting; fence repair; milking;
        tractor maintenance; harvest; egg collection; barn cleaning; fertilizer spreading; pest inspection;
        irrigation check; hay baling; market delivery; soil testing; weeding; animal health check;
        grain storage check; equipment greasing""",
    "Pilot": """weather briefing; flight plan filing; preflight inspection; fuel calculation; crew briefing;
        cockpit setup; takeoff; cruise monitoring; radio communication; approach briefing; landing;
        post-flight inspection; logbook entry; passenger announcement; checklist review; simulator session;
        weight and balance check; maintenance log review; gate coordination; fatigue self-assessment""",
    "Flight Attendant": """safety equipment check; passenger boarding; cabin inspection; safety demonstration;
        beverage service; meal service; duty-free sales; cabin announcement; galley cleanup; seatbelt check;
        passenger assistance; first aid response; lavatory check; landing preparation; passenger deplaning;
        lost item sweep; crew briefing attendance; service cart loading; customs form distribution; trash collection""",
    "Librarian": """book cataloging; shelf reading; circulation desk duty; story hour; reference assistance; interlibrary loan;
        new arrivals display; database training; overdue notice sending; book repair; collection weeding;
        event planning; computer lab supervision; donation sorting; reading list creation; periodicals checkin;
        patron registration; archive digitization; study room booking; newsletter writing""",
    "Mechanic": """vehicle inspection; oil change; brake replacement; tire rotation; engine diagnostics; battery test;
        parts ordering; transmission flush; alignment check; estimate writing; customer consultation;
        coolant refill; spark plug replacement; road test; shop cleanup; tool calibration; filter replacement;
        exhaust repair; warranty claim filing; invoice review""",
    "Plumber": """leak inspection; pipe cutting; drain unclogging; water heater installation; faucet replacement;
        toilet repair; pressure testing; sewer line camera inspection; fixture installation; valve replacement;
        estimate preparation; supply run; permit filing; gas line check; sump pump service; pipe insulation;
        customer walkthrough; backflow testing; trench digging; job site cleanup""",
    "Carpenter": """blueprint reading; lumber measuring; board cutting; frame assembly; cabinet installation; door hanging;
        trim installation; deck building; sanding; staining; stair construction; material ordering;
        tool sharpening; site cleanup; shelf building; window framing; roof truss setting; estimate writing;
        client walkthrough; drywall patching""",
    "Sales Representative": """lead prospecting; cold calling; product demo; proposal writing; CRM update; client follow-up;
        contract negotiation; territory planning; quota review; trade show preparation; pricing approval;
        sales meeting; competitor research; customer visit; quote preparation; referral request; order entry;
        expense logging; pipeline review; training webinar""",
    "Real Estate Agent": """listing presentation; property photography; open house hosting; buyer consultation; showing appointment;
        market analysis; offer drafting; contract review; inspection coordination; appraisal scheduling;
        closing preparation; client follow-up call; listing update; neighborhood tour; mortgage broker call;
        sign installation; lead follow-up; escrow check; staging consultation; key handover""",
    "Photographer": """shot list planning; equipment packing; location scouting; lighting setup; camera calibration;
        portrait session; product shoot; photo culling; color grading; photo retouching; client gallery upload;
        invoice sending; backup creation; lens cleaning; model release collection; print ordering;
        contract signing; social media posting; album design; studio cleanup""",
    "Musician": """instrument tuning; scale practice; band rehearsal; songwriting; sound check; live performance;
        studio recording; music theory study; set list planning; gear maintenance; lesson teaching;
        mixing session; fan email reply; venue booking; merchandise inventory; sheet music transcription;
        metronome practice; press interview; royalty statement review; video shoot""",
    "Software Tester": """test plan writing; test case design; regression testing; exploratory testing; bug reporting;
        test environment setup; automation script writing; smoke testing; performance testing; defect verification;
        test data preparation; requirements review; release sign-off; flaky test investigation; accessibility audit;
        API testing; test report writing; triage meeting; device lab check; coverage analysis""",
    "Data Scientist": """data collection; data cleaning; exploratory analysis; feature engineering; model training;
        hyperparameter tuning; model evaluation; dashboard update; stakeholder presentation; A/B test design;
        SQL query writing; notebook review; pipeline monitoring; data labeling review; report writing;
        literature review; experiment tracking; model deployment; bias audit; data dictionary update""",
    "Project Manager": """kickoff meeting; scope definition; schedule planning; risk register update; status report writing;
        stakeholder update; resource allocation; budget tracking; milestone review; change request review;
        retrospective facilitation; vendor coordination; requirements gathering; team check-in; dependency mapping;
        issue escalation; quality review; lessons learned session; roadmap update; sprint planning""",
    "Truck Driver": """pre-trip inspection; route planning; cargo loading; logbook update; fuel stop; weigh station check;
        delivery drop-off; bill of lading signing; tire pressure check; rest break; dispatcher call;
        load securing; post-trip inspection; toll payment; trailer hookup; receipt filing; mirror adjustment;
        truck washing; customs paperwork; maintenance report""",
    "Veterinarian": """pet examination; vaccination; dental cleaning; surgery; blood test; x-ray reading; owner consultation;
        prescription refill; spay procedure; wound stitching; microchip implantation; nutrition counseling;
        lab sample analysis; euthanasia consultation; follow-up call; medical record update; kennel check;
        ultrasound scan; parasite screening; emergency treatment""",
    "Social Worker": """client intake; home visit; needs assessment; case note writing; resource referral; court report writing;
        family meeting; crisis intervention; benefits application help; supervision meeting; safety planning;
        school liaison; case review; community outreach; housing search help; support group facilitation;
        treatment plan update; phone check-in; file audit; training attendance""",
    "Construction Worker": """safety meeting; site cleanup; concrete pouring; scaffold assembly; rebar tying; excavation;
        material unloading; framing; bricklaying; roofing; tool inspection; measurement marking; drywall hanging;
        equipment operation; form stripping; debris removal; trench shoring; insulation installation;
        window installation; foreman check-in""",
    "Retail Cashier": """register opening; cash counting; customer checkout; coupon processing; refund processing; bagging;
        price check; shelf restocking; gift card activation; loyalty signup; receipt paper change; counter cleaning;
        till reconciliation; product return handling; store announcement; cart collection; shift report;
        lost and found logging; display arranging; register closing""",
    "Hotel Receptionist": """guest check-in; guest check-out; reservation confirmation; phone answering; key card encoding;
        room assignment; complaint resolution; invoice printing; concierge request handling; shuttle booking;
        lost and found check; night audit; morning call setup; lobby tidying; email inquiry reply;
        group booking update; room status update; payment authorization; local tour recommendation; shift log writing""",
    "Fitness Trainer": """client assessment; workout planning; warm-up session; strength training session; cardio class;
        form correction; nutrition advice; progress measurement; equipment cleaning; stretching session;
        group class teaching; client check-in call; program update; certification study; social media posting;
        injury prevention talk; goal setting session; body composition scan; gym floor walk; schedule booking""",
    "Bank Teller": """cash drawer setup; deposit processing; withdrawal processing; check cashing; account inquiry;
        money order issuance; currency exchange; loan payment processing; vault count; identity verification;
        fraud alert review; customer greeting; safe deposit access; cash balancing; transaction logging;
        product referral; coin rolling; branch opening; wire transfer request; drawer audit""",
    "Event Planner": """client briefing; venue scouting; budget drafting; vendor booking; catering tasting; guest list management;
        invitation design; timeline creation; decor planning; audiovisual check; transportation arrangement;
        seating plan; contract review; rehearsal coordination; on-site setup; speaker briefing; registration desk setup;
        post-event survey; invoice reconciliation; teardown supervision""",
    "Translator": """source text reading; terminology research; glossary building; first draft translation; proofreading;
        client query email; formatting check; style guide review; quality assurance check; file delivery;
        invoice sending; interpretation session; subtitle timing; back translation; certification stamping;
        memory database update; deadline planning; reference material gathering; revision request handling;
        dictionary consultation""",
    "Tailor": """customer measurement; fabric selection; pattern drafting; fabric cutting; basting; seam sewing;
        hem alteration; button attachment; fitting session; pressing; zipper replacement; lining insertion;
        thread ordering; machine oiling; order tracking; dress repair; suit tapering; embroidery; waist adjustment;
        garment packaging""",
    "Barista": """espresso machine calibration; bean grinding; milk steaming; latte art practice; order taking; cold brew preparation;
        pastry display setup; counter wiping; syrup refilling; cup restocking; drink serving; cash handling;
        grinder cleaning; menu board update; inventory count; tea brewing; trash emptying; loyalty card stamping;
        bean tasting; closing cleanup""",
}


def main() -> None:
    topics = {name: [p.strip() for p in body.replace("\n", " ").split(";")] for name, body in TOPICS.items()}
    data = {"version": "1", "keyword_forms": KEYWORD_FORMS, "topics": topics}
    out = Path(__file__).resolve().parents[1] / "src" / "planprobe" / "data" / "lexicon.json"
    out.write_text(json.dumps(data, indent=1, ensure_ascii=False) + "\n")
    print(len(topics), "topics;", min(len(v) for v in topics.values()), "min activities")


if __name__ == "__main__":
    main()
