// Bundled first-name pools used for persona sampling.

#include "gabm/names.hpp"

namespace gabm {

namespace {

const std::vector<std::string> kFemaleNames = {
    "Abbi", "Abbie", "Abby", "Abigail", "Adele", "Adriana", "Adrienne", "Aideen", "Aileen",
    "Ailis", "Aimee", "Aine", "Aisling", "Aislinn", "Alana", "Alanis", "Alanna", "Alannah",
    "Alejandra", "Alexa", "Alexandra", "Alexandria", "Alice", "Alicia", "Alisha", "Alison",
    "Alix", "Allison", "Alyssa", "Amanda", "Amber", "Amelia", "Amie", "Amy", "Ana", "Anastasia",
    "Andrea", "Angela", "Angelica", "Angie", "Anita", "Ann", "Anna", "Annalise", "Anne",
    "Annette", "Annie", "Antoinette", "Aoibheann", "Aoibhin", "Aoibhinn", "Aoife", "April",
    "Ariana", "Arianne", "Ashlee", "Ashleigh", "Ashlene", "Ashling", "Audrey", "Autumn",
    "Ayesha", "Barbara", "Becky", "Belinda", "Bernadette", "Beth", "Bethan", "Bethany", "Betty",
    "Beverley", "Beverly", "Bianca", "Blanaid", "Bonnie", "Brandi", "Brandy", "Breanna",
    "Brenda", "Briana", "Brianna", "Bridget", "Brigid", "Brittany", "Brittney", "Brogan",
    "Bronach", "Bronagh", "Brooke", "Bryony", "Cailin", "Caitlin", "Caitlyn", "Caitriona",
    "Candace", "Candice", "Caoimhe", "Cara", "Caragh", "Carla", "Carly", "Carmel", "Carmen",
    "Carol", "Carole", "Caroline", "Carolyn", "Carrie", "Cassandra", "Cassidy", "Cassie",
    "Catherine", "Cathy", "Catriona", "Ceara", "Celine", "Chantel", "Chantelle", "Charis",
    "Charlene", "Charlotte", "Chelsea", "Chelsey", "Cherie", "Cherith", "Cheryl", "Cheyenne",
    "Chloe", "Christina", "Christine", "Ciara", "Ciarrai", "Cindy", "Claire", "Clara", "Clare",
    "Clarissa", "Claudia", "Cliodhna", "Cliona", "Clodagh", "Codie", "Colleen", "Collette",
    "Connie", "Constance", "Cora", "Corinne", "Corrie", "Cortney", "Courteney", "Courtney",
    "Cristina", "Crystal", "Cynthia", "Dairine", "Daisy", "Dana", "Danielle", "Darcy",
    "Darlene", "Dawn", "Dayna", "Deanna", "Dearbhail", "Dearbhaile", "Dearbhla", "Debbie",
    "Deborah", "Debra", "Deirbhile", "Demi", "Denise", "Dervla", "Desiree", "Destiny",
    "Diamond", "Diana", "Diane", "Dionne", "Dominique", "Donna", "Doris", "Dorothy", "Eadaoin",
    "Ebony", "Edel", "Eden", "Eileen", "Eilis", "Eilish", "Eimear", "Eimer", "Eimhear",
    "Elaine", "Eleanor", "Elise", "Elisha", "Elizabeth", "Ella", "Ellen", "Ellie", "Eloise",
    "Emer", "Emilie", "Emily", "Emma", "Enya", "Erica", "Erika", "Erin", "Eryn", "Esther",
    "Eva", "Eve", "Evelyn", "Evie", "Fainche", "Faith", "Faye", "Felicia", "Fiona", "Fionnuala",
    "Frances", "Francesca", "Freya", "Gabriela", "Gabriella", "Gabrielle", "Gail", "Gemma",
    "Georgia", "Georgina", "Geraldine", "Gillian", "Gina", "Glenda", "Gloria", "Grace",
    "Grainne", "Gwendolyn", "Hailey", "Haley", "Hannah", "Harriet", "Hayleigh", "Hayley",
    "Hazel", "Heather", "Heidi", "Helen", "Helena", "Hilary", "Hollie", "Holly", "India",
    "Iona", "Irene", "Isabel", "Isabella", "Jackie", "Jaclyn", "Jacqueline", "Jade", "Jana",
    "Jane", "Janet", "Janice", "Janine", "Jasmin", "Jasmine", "Jayde", "Jayne", "Jeanette",
    "Jeanne", "Jemma", "Jena", "Jenna", "Jenni", "Jennifer", "Jenny", "Jessica", "Jill",
    "Jillian", "Joann", "Joanna", "Joanne", "Jocelyn", "Jodi", "Jodie", "Jody", "Johanna",
    "Jolene", "Josephine", "Joy", "Joyce", "Judith", "Judy", "Julia", "Julie", "June",
    "Justine", "Kaitlin", "Kaitlyn", "Kara", "Karen", "Karina", "Karla", "Karley", "Kate",
    "Katelyn", "Katharine", "Katherine", "Kathleen", "Kathryn", "Kathy", "Katie", "Katrina",
    "Katy", "Kayla", "Kaylee", "Kayleigh", "Keely", "Keeva", "Kelli", "Kellie", "Kelsey",
    "Kendra", "Keri", "Kerri", "Kerrie", "Kiara", "Kiera", "Kimberley", "Kimberly", "Kira",
    "Kirby", "Kirsten", "Kirstie", "Kirstin", "Kirsty", "Kori", "Krista", "Kristen", "Kristi",
    "Kristie", "Kristin", "Kristina", "Kristine", "Kristy", "Krystal", "Kylie", "Lacey", "Lana",
    "Laoise", "Lara", "Latasha", "Latoya", "Laura", "Lauren", "Laurie", "Leah", "Leanne",
    "Leona", "Leonie", "Lesley", "Linda", "Lindsey", "Lisa", "Liza", "Lois", "Loretta", "Lori",
    "Lorna", "Lorraine", "Louise", "Lucia", "Lucinda", "Lucy", "Lydia", "Lynda", "Lyndsay",
    "Lyndsey", "Lynn", "Lynne", "Lynsey", "Mackenzie", "Madeline", "Madison", "Maeve",
    "Mairead", "Makayla", "Mallory", "Mandy", "Marcia", "Margaret", "Maria", "Mariah", "Marie",
    "Marilyn", "Marion", "Marisa", "Marissa", "Martha", "Martina", "Mary", "Maura", "Maureen",
    "Mckenzie", "Meabh", "Meagan", "Meaghan", "Meg", "Megan", "Meghan", "Meibh", "Melanie",
    "Melinda", "Melissa", "Melody", "Mercedes", "Meredith", "Mia", "Michaela", "Micheala",
    "Michelle", "Mikayla", "Mindy", "Miranda", "Miriam", "Misty", "Mollie", "Molly", "Monica",
    "Monique", "Nadia", "Nadine", "Nancy", "Naoimh", "Naomh", "Naomi", "Natalie", "Natasha",
    "Niamh", "Nichola", "Nichole", "Nicole", "Nikita", "Nikki", "Nina", "Nora", "Norma",
    "Nuala", "Olivia", "Oonagh", "Orfhlaith", "Orla", "Orlagh", "Orlaigh", "Orlaith",
    "Padraigin", "Paige", "Pam", "Pamela", "Patrice", "Patricia", "Patty", "Paula", "Pauline",
    "Peggy", "Penny", "Phoebe", "Phyllis", "Polly", "Priscilla", "Rachael", "Rachel",
    "Rachelle", "Raven", "Rebecca", "Rebekah", "Regina", "Renee", "Rhian", "Rhianna", "Rhianne",
    "Rhiannon", "Rhonda", "Rita", "Roberta", "Robyn", "Roise", "Roisin", "Rose", "Roseanna",
    "Rosemary", "Rosie", "Ruth", "Sabrina", "Sacha", "Sally", "Samantha", "Sandra", "Sandy",
    "Saoirse", "Sara", "Sarah", "Sasha", "Saskia", "Savannah", "Seana", "Seanan", "Seaneen",
    "Seanna", "Selena", "Selina", "Seona", "Serena", "Shania", "Shanice", "Shanna", "Shannan",
    "Shannen", "Shari", "Sharon", "Shauna", "Shauneen", "Shawna", "Sheena", "Sheila", "Shelby",
    "Shelia", "Shelley", "Shelly", "Sheree", "Sheri", "Sherri", "Sherry", "Sheryl", "Shirley",
    "Shona", "Sian", "Sierra", "Sinead", "Siobhan", "Siofra", "Sonia", "Sonya", "Sophia",
    "Sophie", "Sorcha", "Stacey", "Stacie", "Stacy", "Stefanie", "Stephanie", "Sue", "Summer",
    "Susan", "Susanna", "Susannah", "Suzanne", "Sydney", "Sylvia", "Tabitha", "Tamara", "Tami",
    "Tammie", "Tammy", "Tanya", "Tara", "Tasha", "Teresa", "Terri", "Tess", "Tessa", "Theresa",
    "Therese", "Tia", "Tiffany", "Tina", "Tonya", "Tracey", "Traci", "Tracie", "Tricia",
    "Valerie", "Vanessa", "Veronica", "Vicki", "Vickie", "Victoria", "Virginia", "Wanda",
    "Wendy", "Whitney", "Yesenia", "Yolanda", "Yvette", "Yvonne",
};

const std::vector<std::string> kMaleNames = {
    "Aadi", "Aarav", "Aarnav", "Aaron", "Aarush", "Aayush", "Abdul", "Abeer", "Abhimanyu",
    "Abhiram", "Adam", "Aditya", "Adrian", "Advaith", "Advay", "Advik", "Aedan", "Agastya",
    "Aidan", "Aiden", "Akshay", "Alan", "Alastair", "Albert", "Alec", "Alejandro", "Alexander",
    "Alfred", "Alistair", "Alister", "Allan", "Allen", "Alvin", "Amol", "Anaru", "Anay",
    "Andre", "Andres", "Andrew", "Angus", "Anirudh", "Anmol", "Ansh", "Anthony", "Antoin",
    "Anton", "Antonio", "Antony", "Aodhan", "Archer", "Archie", "Ari", "Ariki", "Arin", "Arjun",
    "Arlo", "Arran", "Arron", "Arthur", "Aryan", "Asher", "Atharv", "Austin", "Avi", "Ayaan",
    "Ayush", "Ayushman", "Azaan", "Azad", "Bachittar", "Bahadurjit", "Bailie", "Bakhshi",
    "Balendra", "Balhaar", "Baljiwan", "Balvan", "Balveer", "Banjeet", "Barry", "Beau",
    "Beauden", "Ben", "Benjamin", "Benn", "Bernard", "Bevan", "Bill", "Billy", "Blaine",
    "Blair", "Blake", "Bob", "Bobby", "Bodhi", "Brad", "Bradley", "Brady", "Brandon", "Braxton",
    "Brayden", "Breandan", "Brendan", "Brendon", "Brent", "Brett", "Brian", "Brijesh", "Brodie",
    "Bruce", "Bryan", "Bryce", "Cahal", "Cahir", "Cailum", "Cal", "Caleb", "Callan", "Callum",
    "Calum", "Calvin", "Cameron", "Campbell", "Caoimhin", "Caolain", "Caolan", "Caomhan",
    "Carl", "Carlos", "Carter", "Cathal", "Cesar", "Chad", "Chaitanya", "Chakradev",
    "Chakradhar", "Champak", "Charles", "Chase", "Che", "Chris", "Christian", "Cianan",
    "Ciaran", "Cillian", "Clarence", "Clark", "Clayton", "Clifford", "Clinton", "Clive", "Cody",
    "Cohen", "Cole", "Colin", "Collin", "Colm", "Colton", "Colum", "Conal", "Conall", "Conan",
    "Conchur", "Conn", "Connor", "Conor", "Conrad", "Cooper", "Corey", "Cormac", "Cory",
    "Craig", "Cristian", "Curtis", "Dakota", "Dale", "Dalton", "Damian", "Damien", "Damon",
    "Dan", "Daniel", "Danny", "Darin", "Darius", "Darrell", "Darren", "Darrin", "Darryl",
    "Darryn", "Daryl", "Dave", "David", "Deaglan", "Dean", "Deane", "Declan", "Denis", "Dennis",
    "Derek", "Dermot", "Derrick", "Desmond", "Devin", "Devon", "Diarmuid", "Dillon", "Dion",
    "Domhnall", "Dominic", "Don", "Donal", "Donald", "Douglas", "Drew", "Duane", "Duncan",
    "Dustin", "Dwayne", "Dylan", "Eamon", "Eamonn", "Earl", "Eddie", "Edgar", "Eduardo",
    "Edward", "Edwin", "Elijah", "Elliot", "Elliott", "Emmet", "Emmett", "Enda", "Eoghan",
    "Eoin", "Eric", "Erik", "Ernest", "Ethan", "Euan", "Eugene", "Eunan", "Evan", "Ewan",
    "Ezra", "Feargal", "Fearghal", "Felix", "Fergal", "Fergus", "Fernando", "Finbar", "Finn",
    "Fintan", "Fionntan", "Fletcher", "Flynn", "Francis", "Francisco", "Frank", "Franklin",
    "Fraser", "Frazer", "Fred", "Frederick", "Gabriel", "Gareth", "Garrett", "Garry", "Gary",
    "Gavin", "Gene", "Geoffrey", "George", "Gerald", "Gerard", "Gilbert", "Giles", "Glen",
    "Glenn", "Gordon", "Graeme", "Graham", "Grant", "Grayson", "Greg", "Gregg", "Gregory",
    "Guy", "Hamish", "Harley", "Harold", "Harrison", "Harry", "Harvey", "Hayden", "Hector",
    "Hemi", "Henry", "Herbert", "Hoani", "Howard", "Hudson", "Hugh", "Hugo", "Hunter", "Iain",
    "Ian", "Ihaia", "Isaac", "Isaiah", "Israel", "Ivan", "Jack", "Jackson", "Jacob", "Jake",
    "Jakob", "James", "Jared", "Jarlath", "Jarrod", "Jason", "Jasper", "Javier", "Jaxon", "Jay",
    "Jayden", "Jeff", "Jeffery", "Jeffrey", "Jeremiah", "Jeremy", "Jermaine", "Jerome", "Jerry",
    "Jesse", "Jesus", "Jim", "Jimmy", "Joe", "Joel", "John", "Johnathan", "Johnny", "Jon",
    "Jonathan", "Jonathon", "Jordon", "Jorge", "Jose", "Joseph", "Josh", "Joshua", "Josiah",
    "Juan", "Jude", "Julian", "Justin", "Kahu", "Kaleb", "Kane", "Karl", "Kauri", "Kayden",
    "Kealan", "Keanu", "Keegan", "Keelan", "Keith", "Kelvin", "Kenneth", "Kent", "Kevin",
    "Kieran", "Killian", "Kingston", "Kirk", "Kristian", "Kristopher", "Kurt", "Kurtis", "Kyle",
    "Lachlan", "Lance", "Larry", "Lawrence", "Lee", "Leo", "Leon", "Leonard", "Leroy", "Levi",
    "Lewis", "Liam", "Lincoln", "Lloyd", "Logan", "Lonnie", "Lorcan", "Louis", "Luca", "Lucas",
    "Luis", "Lukas", "Luke", "Lyndon", "Macauley", "Mairtin", "Malachy", "Malcolm", "Malik",
    "Manaaki", "Manawa", "Manuel", "Manus", "Marc", "Marco", "Marcus", "Mario", "Mark",
    "Martin", "Martyn", "Marvin", "Mason", "Mathew", "Matiu", "Matthew", "Maurice", "Max",
    "Maxwell", "Melvin", "Mervyn", "Micah", "Michael", "Micheal", "Miguel", "Mikaere", "Mike",
    "Mitchel", "Mitchell", "Mohammad", "Murray", "Myles", "Nate", "Nathan", "Nathaniel", "Neil",
    "Neville", "Niall", "Nicholas", "Nicolas", "Nigel", "Nikau", "Niko", "Nikora", "Nixon",
    "Noah", "Noel", "Norman", "Odhran", "Oisin", "Oliver", "Omar", "Oran", "Oscar", "Owen",
    "Padraic", "Padraig", "Parker", "Patrick", "Paul", "Pauric", "Peadar", "Pearce", "Pearse",
    "Pedro", "Perry", "Peter", "Philip", "Phillip", "Phoenix", "Piaras", "Pierce", "Preston",
    "Quentin", "Ralph", "Randall", "Randy", "Rawiri", "Ray", "Raymond", "Reece", "Reginald",
    "Reuben", "Rex", "Rhys", "Rian", "Ricardo", "Richard", "Rick", "Rickey", "Ricky", "Robbie",
    "Robert", "Roberto", "Rodney", "Roger", "Rohan", "Roman", "Ronald", "Ronan", "Ronnie",
    "Rory", "Ross", "Rowan", "Roy", "Ruairi", "Ruari", "Ruben", "Russell", "Ryan", "Ryder",
    "Samuel", "Saul", "Scot", "Scott", "Seamus", "Sean", "Sebastian", "Sergio", "Seth", "Shane",
    "Shaun", "Shawn", "Shay", "Shayne", "Shea", "Simon", "Sione", "Spencer", "Stanley",
    "Stefan", "Stephen", "Steve", "Steven", "Stewart", "Stuart", "Tai", "Taine", "Tama",
    "Tamati", "Tane", "Tangaroa", "Tanner", "Terence", "Terrance", "Terrence", "Theo",
    "Theodore", "Thomas", "Tiarnan", "Tiernan", "Tim", "Timothy", "Tobias", "Toby", "Todd",
    "Tom", "Tomas", "Tommy", "Tony", "Travis", "Trent", "Trevor", "Tristan", "Troy", "Tyrone",
    "Tyson", "Vaughan", "Vernon", "Victor", "Vincent", "Walter", "Warren", "Warwick", "Wayne",
    "Wesley", "William", "Willie", "Wiremu", "Wyatt", "Xavier", "Zac", "Zach", "Zachary", "Zak",
    "Zane", "Zion",
};

} // namespace

const NamePool& default_name_pool()
{
    static const NamePool pool{kFemaleNames, kMaleNames};
    return pool;
}

} // namespace gabm
